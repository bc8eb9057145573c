"""``polarmap`` command line.

Exit codes: 0 on success, 1 on a usage error such as a bad flag or an
unreadable file, 2 when well-formed input fails validation, for example an
unphysical map. Errors print one ``polarmap: <kind>: <message>``
line on stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import io as pio
from .cloude import classify, cloude_decompose
from .entanglement import boundary_curves, curves_csv, monte_carlo_dichroic, scatter_csv
from .exceptions import PolarmapError
from .mems import mems_mueller_pair, mems_state, verify_mems
from .mueller import make_element, mueller_from_jones, std_from_real
from .network import FIGURES, build_figure_network, network_equals_kraus, run_network
from .qmaps import SINGLET, apply_bilocal, apply_one_qubit, validate_density


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit(obj, out=None):
    _write(pio.dumps(obj) + "\n", out)


def _load(path):
    try:
        return pio.load_matrix(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from exc


def _mueller_std(path):
    kind, m = _load(path)
    if kind == "mueller_std":
        return m
    if kind == "mueller_real":
        return std_from_real(m)
    raise PolarmapError(f"{path}: expected a Mueller matrix, got {kind}")


def _kraus_doc(ks):
    return {
        "weights": [float(w) for w in ks.weights],
        "operators": [pio.complex_pairs(t) for t in ks.operators],
    }


# -- subcommands ------------------------------------------------------------------


def cmd_jones2mueller(args):
    if args.file:
        kind, t = _load(args.file)
        if kind != "jones":
            raise PolarmapError(f"expected a jones document, got {kind}")
    else:
        if not args.element:
            raise UsageError("give a jones document or --element KIND [PARAMS...]")
        kind, *params = args.element
        try:
            params = [float(x) for x in params]
        except ValueError:
            raise UsageError("element parameters must be numbers") from None
        if kind == "retarder":
            if len(params) != 4:
                raise UsageError("retarder takes axis_x axis_y axis_z retardance")
            params = [params[:3], params[3]]
        try:
            t = make_element(kind, *params)
        except TypeError:
            raise UsageError(f"wrong number of parameters for {kind}") from None
    m_std, m_real = mueller_from_jones(t)
    _emit({"mueller_std": pio.complex_pairs(m_std), "mueller_real": (m_real + 0.0).tolist()}, args.out)


def cmd_cloude(args):
    m = _mueller_std(args.file)
    ks = cloude_decompose(m, keep_zero=args.keep_zero)
    doc = _kraus_doc(ks)
    doc["eigenvalues"] = [float(x) for x in ks.eigenvalues]
    doc["classification"] = classify(m).to_dict()
    _emit(doc, args.out)


SHAPE_DIM = {"density1": 2, "density2": 4}


def cmd_validate(args):
    kind, m = _load(args.file)
    if kind in ("mueller_std", "mueller_real"):
        c = classify(m, basis="real" if kind == "mueller_real" else "std")
        _emit({"kind": kind, **c.to_dict()})
        return 0 if c.physical else 2
    if kind in ("density1", "density2"):
        validate_density(m, SHAPE_DIM[kind])
        _emit({"kind": kind, "valid": True})
        return 0
    _emit({"kind": kind, "valid": True})
    return 0


def cmd_apply(args):
    if args.singlet == bool(args.state):
        raise UsageError("give exactly one of --state FILE or --singlet")
    kind, rho = ("density2", SINGLET) if args.singlet else _load(args.state)
    m_a = _mueller_std(args.map_a)
    if kind == "density1":
        if args.map_b:
            raise UsageError("--map-b needs a density2 state")
        out, tr = apply_one_qubit(m_a, validate_density(rho, 2))
        _emit({"state": pio.serialize_matrix(out, "density1"), "trace": tr}, args.out)
        return
    if kind != "density2":
        raise PolarmapError(f"state must be density1 or density2, got {kind}")
    m_b = _mueller_std(args.map_b) if args.map_b else np.eye(4, dtype=complex)
    out, tr = apply_bilocal(m_a, m_b, rho)
    _emit({"state": pio.serialize_matrix(out, "density2"), "trace": tr}, args.out)


def cmd_simulate(args):
    cfg = pio.RunConfig.resolve(seed=args.seed, samples=args.samples)
    _write(scatter_csv(monte_carlo_dichroic(cfg.samples, cfg.seed)), args.out)


def cmd_curves(args):
    cfg = pio.RunConfig.resolve(grid=args.grid)
    _write(curves_csv(boundary_curves(cfg.grid)), args.out)


def cmd_mems(args):
    pair = mems_mueller_pair(args.p)
    doc = {
        "p": args.p,
        "region": pair.params.region,
        "g": pair.params.g,
        "rho_mems": pio.serialize_matrix(mems_state(args.p), "density2"),
        "m_a": pair.m_a.tolist(),
        "m_b": pair.m_b.tolist(),
        "kraus_a": _kraus_doc(pair.kraus_a),
        "kraus_b": _kraus_doc(pair.kraus_b),
        "spectrum": pair.spectrum.tolist(),
    }
    status = 0
    if args.check:
        report = verify_mems(args.p)
        errors = {k: v for k, v in report.items() if k not in ("p", "region", "tangle")}
        report["max_error"] = max(errors.values())
        report["passed"] = report["max_error"] <= args.tol
        doc["report"] = report
        status = 0 if report["passed"] else 2
    _emit(doc, args.out)
    return status


def _parse_input(text):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError("--input needs four numbers a_re,a_im,b_re,b_im") from None
    if len(vals) != 4:
        raise UsageError("--input needs four numbers a_re,a_im,b_re,b_im")
    psi = np.array([vals[0] + 1j * vals[1], vals[2] + 1j * vals[3]])
    norm = np.linalg.norm(psi)
    if norm == 0 or not np.isfinite(norm):
        raise PolarmapError("input Jones vector must be finite and non-zero")
    return psi / norm


def cmd_network(args):
    spec = build_figure_network(args.figure, args.p)
    psi = _parse_input(args.input)
    branches, rho = run_network(spec, psi)
    doc = {
        "figure": args.figure,
        "p": args.p,
        "input": pio.complex_pairs(psi),
        "branches": [{"label": b.label, "mode": b.mode, "jones": pio.complex_pairs(b.jones)} for b in branches],
        "rho": pio.complex_pairs(rho),
    }
    status = 0
    if args.check:
        side = FIGURES[args.figure][0]
        err = network_equals_kraus(side, args.p, args.trials, pio.RunConfig.resolve(seed=args.seed).seed)
        doc["check"] = {"max_error": err, "trials": args.trials, "passed": err <= args.tol}
        status = 0 if err <= args.tol else 2
    _emit(doc, args.out)
    return status


def build_parser():
    parser = _Parser(prog="polarmap", description="Mueller matrices as quantum maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("jones2mueller", help="Mueller matrices of a Jones matrix")
    p.add_argument("file", nargs="?")
    p.add_argument("--element", nargs="+", metavar="KIND", help="hwp|rotator|diattenuator|retarder and its parameters")
    p.add_argument("--out")
    p.set_defaults(func=cmd_jones2mueller)

    p = sub.add_parser("cloude", help="Cloude (Kraus) decomposition of a Mueller matrix")
    p.add_argument("file")
    p.add_argument("--keep-zero", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cloude)

    p = sub.add_parser("validate", help="classify a Mueller matrix or check a density matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("apply", help="apply one or two Mueller maps to a state")
    p.add_argument("--map", "--map-a", dest="map_a", required=True)
    p.add_argument("--map-b")
    p.add_argument("--state")
    p.add_argument("--singlet", action="store_true", help="use the singlet as input state")
    p.add_argument("--out")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("simulate-dichroic", help="Monte Carlo scatter of the dichroic scatterer")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("curves", help="Werner and MEMS boundary curves")
    p.add_argument("--grid", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("mems", help="MEMS state with its Mueller pair and Kraus sets")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mems)

    p = sub.add_parser("network", help="simulate a MEMS optical network")
    p.add_argument("--figure", type=int, choices=sorted(FIGURES), required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--input", default="1,0,0,0")
    p.add_argument("--check", action="store_true")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_network)
    return parser


def _fail(kind, message, code):
    sys.stderr.write(f"polarmap: {kind}: {' '.join(str(message).split())}\n")
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args)
    except UsageError as exc:
        return _fail("usage", exc, 1)
    except OSError as exc:
        return _fail("usage", f"{exc.filename}: {exc.strerror}", 1)
    except (PolarmapError, ValueError) as exc:
        return _fail(type(exc).__name__, exc, 2)
    return 0 if status is None else status


if __name__ == "__main__":
    sys.exit(main())
