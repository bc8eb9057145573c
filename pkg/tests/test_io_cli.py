import json
import shutil
import subprocess

import numpy as np
import pytest

from polarmap import io as pio
from polarmap.cli import main
from polarmap.exceptions import ShapeError
from polarmap.mueller import std_from_real
from polarmap.qmaps import SINGLET


def write_doc(path, m, kind):
    path.write_text(pio.dumps(pio.serialize_matrix(m, kind)))
    return str(path)


def test_parse_examples():
    kind, t = pio.parse_matrix('{"kind":"jones","data":[[[1,0],[0,0]],[[0,0],[1,0]]]}')
    assert kind == "jones" and np.array_equal(t, np.eye(2))
    kind, rho = pio.parse_matrix(pio.serialize_matrix(SINGLET, "density2"))
    assert np.trace(rho).real == 1.0
    with pytest.raises(ShapeError):
        pio.parse_matrix({"kind": "mueller_real", "data": np.eye(3).tolist()})


def test_parse_errors():
    with pytest.raises(ValueError):
        pio.parse_matrix({"kind": "tensor", "data": [[1]]})
    with pytest.raises(ValueError):
        pio.parse_matrix({"data": [[1]]})
    with pytest.raises(ValueError):
        pio.parse_matrix({"kind": "mueller_real", "data": [[[1, 1e-6]] * 4] * 4})
    with pytest.raises(ValueError):
        pio.parse_matrix('{"kind": "density1", "data": [[NaN, 0], [0, 1]]}')
    with pytest.raises(ShapeError):
        pio.parse_matrix({"kind": "jones", "data": [[1, 2], [3]]})
    with pytest.raises(ValueError):
        pio.serialize_matrix(np.full((2, 2), np.inf), "jones")


def test_roundtrip_full_precision(rng):
    for kind, shape in pio.SHAPES.items():
        m = rng.normal(size=shape) * np.pi
        if kind not in pio.REAL_KINDS:
            m = m + 1j * rng.normal(size=shape) / 3
        text = pio.dumps(pio.serialize_matrix(m, kind))
        back_kind, back = pio.parse_matrix(text)
        assert back_kind == kind and np.array_equal(back, m)


def test_negative_zero_normalized():
    assert pio.dumps(pio.complex_pairs(np.array([-0.0 + 0j]))) == "[[0.0, 0.0]]"


def test_run_config():
    assert pio.RunConfig.resolve(env={}) == pio.RunConfig(0, 10_000, 201)
    assert pio.RunConfig.resolve(env={"POLARMAP_SEED": "9"}).seed == 9
    assert pio.RunConfig.resolve(seed=4, env={"POLARMAP_SEED": "9"}).seed == 4
    with pytest.raises(ValueError):
        pio.RunConfig(seed=-1)
    with pytest.raises(ValueError):
        pio.RunConfig(samples=0)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_validate(tmp_path, capsys):
    path = write_doc(tmp_path / "id4.json", np.eye(4), "mueller_real")
    code, out, _ = run(capsys, "validate", path)
    assert code == 0 and json.loads(out)["physical"] is True
    swap = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            swap[2 * i + j, 2 * j + i] = 1
    path = write_doc(tmp_path / "t.json", swap, "mueller_std")
    code, out, _ = run(capsys, "validate", path)
    assert code == 2 and json.loads(out)["physical"] is False


def test_cli_jones2mueller(tmp_path, capsys):
    code, out, _ = run(capsys, "jones2mueller", "--element", "hwp", "0")
    assert code == 0
    assert np.allclose(json.loads(out)["mueller_real"], np.diag([1, -1, -1, 1]))
    code, out, _ = run(capsys, "jones2mueller", "--element", "retarder", "0", "0", "1", "0.5")
    assert code == 0
    path = write_doc(tmp_path / "j.json", np.eye(2), "jones")
    code, out, _ = run(capsys, "jones2mueller", path)
    assert np.allclose(json.loads(out)["mueller_real"], np.eye(4))
    code, _, err = run(capsys, "jones2mueller", "--element", "hwp")
    assert code == 1 and err.startswith("polarmap: usage:")


def test_cli_cloude(tmp_path, capsys):
    path = write_doc(tmp_path / "id4.json", np.eye(4), "mueller_real")
    out_path = tmp_path / "k.json"
    code, _, _ = run(capsys, "cloude", path, "--out", str(out_path))
    doc = json.loads(out_path.read_text())
    assert code == 0 and doc["weights"] == pytest.approx([2.0], abs=1e-14)
    assert doc["classification"]["unital"] is True


def test_cli_apply(tmp_path, capsys):
    dep = write_doc(tmp_path / "dep.json", np.diag([1, 0.5, 0.5, 0.5]), "mueller_real")
    code, out, _ = run(capsys, "apply", "--map", dep, "--singlet")
    doc = json.loads(out)
    _, rho = pio.parse_matrix(doc["state"])
    assert code == 0 and np.allclose(rho, 0.5 * SINGLET + 0.125 * np.eye(4))
    state = write_doc(tmp_path / "s.json", np.eye(2) / 2, "density1")
    code, out, _ = run(capsys, "apply", "--map", dep, "--state", state)
    assert code == 0 and json.loads(out)["trace"] == 1.0
    code, _, err = run(capsys, "apply", "--map", dep)
    assert code == 1


def test_cli_mems(capsys):
    code, out, _ = run(capsys, "mems", "--p", "0.8", "--check")
    doc = json.loads(out)
    assert code == 0 and doc["report"]["max_error"] <= 1e-9 and doc["region"] == "I"
    code, _, err = run(capsys, "mems", "--p", "1.5")
    assert code == 2 and err.count("\n") == 1


def test_cli_network(capsys):
    code, out, _ = run(capsys, "network", "--figure", "5", "--p", "0.8", "--input", "0,0,1,0", "--check")
    doc = json.loads(out)
    assert code == 0 and doc["check"]["passed"]
    assert np.allclose(np.array(doc["rho"])[..., 0], np.diag([0.2, 0.8]))
    code, _, err = run(capsys, "network", "--figure", "7", "--p", "0.9")
    assert code == 2 and err.startswith("polarmap: ValueError:")
    code, _, _ = run(capsys, "network", "--figure", "5", "--p", "0.9", "--input", "1,2")
    assert code == 1


def test_cli_simulate_deterministic(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate-dichroic", "--samples", "10", "--seed", "7", "--out", str(a)]) == 0
    assert main(["simulate-dichroic", "--samples", "10", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "index,p,d0,d1,theta,linear_entropy,tangle,class"
    monkeypatch.setenv("POLARMAP_SEED", "7")
    c = tmp_path / "c.csv"
    assert main(["simulate-dichroic", "--samples", "10", "--out", str(c)]) == 0
    assert c.read_bytes() == a.read_bytes()


def test_cli_curves(capsys):
    code, out, _ = run(capsys, "curves", "--grid", "5")
    assert code == 0 and len(out.splitlines()) == 11


def test_cli_usage_errors(tmp_path, capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1 and err.startswith("polarmap: usage:") and err.count("\n") == 1
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "validate", str(bad))
    assert code == 1
    bad.write_text('{"kind": "mueller_real", "data": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "ShapeError" in err


def test_mueller_std_file_accepted(tmp_path, capsys):
    path = write_doc(tmp_path / "m.json", std_from_real(np.diag([1, 0.2, 0.2, 0.2])), "mueller_std")
    code, out, _ = run(capsys, "cloude", path)
    assert code == 0 and len(json.loads(out)["weights"]) == 4


@pytest.mark.skipif(shutil.which("polarmap") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["polarmap", "mems", "--p", "0.5", "--check"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["report"]["passed"]
