import numpy as np
import pytest

from polarmap.mems import BOUNDARY
from polarmap.network import (
    Element,
    NetworkSpec,
    angles,
    apply_element,
    as_dict,
    build_figure_network,
    build_mems_network,
    composite_hvbs,
    composite_vvbs,
    expected_branches,
    figure_for,
    input_state,
    network_equals_kraus,
    propagate,
    random_pure_inputs,
    run_network,
)


def test_element_validation():
    with pytest.raises(ValueError):
        Element("lens", (1,))
    with pytest.raises(ValueError):
        Element("pbs", (1,))
    with pytest.raises(ValueError):
        NetworkSpec((Element("hwp", (3,)),), 2)


@pytest.mark.parametrize(
    "e",
    [
        Element("pbs", (1, 2)),
        Element("mirror", (1, 2)),
        Element("hwp", (1,), 0.3),
        Element("rotator", (2,), 1.1),
        Element("phase", (1,), 0.7),
        Element("hvbs", (1, 2), 0.4),
        Element("vvbs", (2, 1), 1.2),
    ],
)
def test_elements_are_unitary(e):
    cols = []
    for k in range(4):
        amp = np.zeros(4, dtype=complex)
        amp[k] = 1
        cols.append(apply_element(e, amp.reshape(2, 2)).reshape(4))
    u = np.array(cols).T
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-15)


def test_pbs_and_vbs_actions():
    amp = input_state([1, 1], 2)
    out = as_dict(apply_element(Element("pbs", (1, 2)), amp))
    assert out == {("H", 1): 1, ("V", 2): 1}
    th = 0.3
    out = as_dict(apply_element(Element("hvbs", (1, 2), th), input_state([1, 0], 2)))
    assert out[("H", 1)] == pytest.approx(np.cos(th)) and out[("H", 2)] == pytest.approx(np.sin(th))
    amp = np.zeros((2, 2), dtype=complex)
    amp[1, 1] = 1
    out = as_dict(apply_element(Element("vvbs", (1, 2), th), amp))
    assert out[("V", 1)] == pytest.approx(np.cos(th)) and out[("V", 2)] == pytest.approx(np.sin(th))


def test_apply_element_does_not_mutate():
    amp = input_state([1, 0], 2)
    before = amp.copy()
    apply_element(Element("hvbs", (1, 2), 0.5), amp)
    assert np.array_equal(amp, before)


def test_composite_vbs_match_primitives():
    for th in (0.0, 0.4, 1.2):
        spec = NetworkSpec(composite_hvbs(th, 1, 2), 2)
        ref = apply_element(Element("hvbs", (1, 2), th), input_state([1, 0], 2))
        assert np.allclose(propagate(spec, input_state([1, 0], 2)), ref, atol=1e-15)
        amp = np.zeros((2, 2), dtype=complex)
        amp[1, 1] = 1
        spec = NetworkSpec(composite_vvbs(th, 1, 2), 2)
        assert np.allclose(propagate(spec, amp), apply_element(Element("vvbs", (1, 2), th), amp), atol=1e-15)


def test_figure5_examples():
    p = 0.8
    spec = build_figure_network(5, p)
    _, rho = run_network(spec, [1, 0])
    assert np.allclose(rho, np.diag([1, 0]), atol=1e-15)
    _, rho = run_network(spec, [0, 1])
    assert np.allclose(rho, np.diag([1 - p, p]), atol=1e-15)


def test_figure6_unitary_at_one():
    spec = build_figure_network(6, 1.0)
    for psi in random_pure_inputs(5, seed=2):
        branches, rho = run_network(spec, psi)
        t = np.array([[0, -1], [1, 0]])
        assert np.allclose(rho, np.outer(t @ psi, (t @ psi).conj()), atol=1e-15)
        assert np.allclose(next(b.jones for b in branches if b.label == "1"), 0, atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, BOUNDARY, 0.7, 0.85, 1.0])
@pytest.mark.parametrize("side", ["A", "B"])
def test_network_matches_kraus(side, p):
    assert network_equals_kraus(side, p, trials=20, seed=1) <= 1e-12
    spec = build_mems_network(side, p)
    for psi in random_pure_inputs(3, seed=5):
        branches, rho = run_network(spec, psi)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
        expected = expected_branches(side, p, psi)
        for b in branches:
            assert np.allclose(b.jones, expected[b.label], atol=1e-12)


def test_figure_selection_and_errors():
    assert figure_for("A", 0.9) == 5 and figure_for("B", 0.9) == 6
    assert figure_for("A", BOUNDARY) == 7 and figure_for("B", 0.1) == 8
    with pytest.raises(ValueError):
        build_figure_network(5, 0.5)
    with pytest.raises(ValueError):
        build_figure_network(7, 0.9)
    with pytest.raises(ValueError):
        build_figure_network(4, 0.9)
    with pytest.raises(ValueError):
        figure_for("C", 0.5)
    with pytest.raises(ValueError):
        network_equals_kraus("A", 0.5, trials=0)


def test_angles():
    a = angles(1.0)
    assert a.theta_p == 0.0
    assert np.cos(a.theta_third) == pytest.approx(1 / np.sqrt(3))
    b = angles(BOUNDARY)
    assert b.theta_phi == 0.0 and b.theta_psi == pytest.approx(np.pi / 2)
    assert np.isnan(angles(0.9).theta_phi)
