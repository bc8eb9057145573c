"""Single-photon linear-optics networks over polarization and spatial modes.

A state is a complex array ``amp[mode - 1, pol]`` with ``pol`` 0 for H and
1 for V; spatial modes are numbered from 1. Every element is unitary on the
full mode space. Propagation and mirrors add no phase, so the
interferometers are balanced by construction.

The four builders realize the MEMS single-qubit maps:

* figure 5 / 6: side A / B for ``2/3 < p <= 1``;
* figure 7 / 8: side A / B for ``0 <= p <= 2/3``.

The photon enters in mode 1; a single detector collects every spatial mode,
so the branch polarization states add incoherently.
"""

from dataclasses import dataclass, field

import numpy as np

from .mems import BOUNDARY, coefficients, region_of, scaled_kraus
from .mueller import hwp, rotator

H, V = 0, 1
KINDS = ("pbs", "hwp", "rotator", "hvbs", "vvbs", "mirror", "phase")


@dataclass(frozen=True)
class Element:
    """``kind`` with angle ``theta`` (unused by pbs/mirror) acting on ``modes``.

    Two-mode elements take ``modes = (n, m)``; the rest take ``(mode,)``.
    """

    kind: str
    modes: tuple
    theta: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        want = 2 if self.kind in ("pbs", "hvbs", "vvbs", "mirror") else 1
        if len(self.modes) != want:
            raise ValueError(f"{self.kind} acts on {want} mode(s), got {self.modes}")


@dataclass(frozen=True)
class NetworkSpec:
    """Ordered elements plus the branch labels read at the detector.

    ``branches`` maps a spatial mode to the label of the Kraus term it
    carries. All listed modes fall in one detector bin.
    """

    elements: tuple
    n_modes: int
    branches: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for e in self.elements:
            for mode in e.modes:
                if not 1 <= mode <= self.n_modes:
                    raise ValueError(f"{e.kind} references undeclared mode {mode}")


@dataclass(frozen=True)
class Branch:
    label: str
    mode: int
    jones: np.ndarray


def input_state(psi0, n_modes):
    """Photon with Jones vector ``psi0`` entering spatial mode 1."""
    amp = np.zeros((n_modes, 2), dtype=complex)
    amp[0] = np.asarray(psi0, dtype=complex)
    return amp


def as_dict(amp, tol=0.0):
    """``{(pol, mode): amplitude}`` view with ``pol`` in {"H", "V"}."""
    return {
        ("HV"[pol], mode + 1): complex(amp[mode, pol])
        for mode in range(amp.shape[0])
        for pol in (H, V)
        if abs(amp[mode, pol]) > tol
    }


def apply_element(e, amp):
    """Return the state after element ``e``; the input is not modified."""
    amp = np.array(amp, dtype=complex)
    if any(not 1 <= mode <= amp.shape[0] for mode in e.modes):
        raise ValueError(f"{e.kind} references undeclared mode")
    idx = [mode - 1 for mode in e.modes]
    c, s = np.cos(e.theta), np.sin(e.theta)
    if e.kind == "pbs":
        n, m = idx
        amp[n, V], amp[m, V] = amp[m, V], amp[n, V]
    elif e.kind == "mirror":
        n, m = idx
        amp[[n, m]] = amp[[m, n]]
    elif e.kind == "hwp":
        amp[idx[0]] = hwp(e.theta) @ amp[idx[0]]
    elif e.kind == "rotator":
        amp[idx[0]] = rotator(e.theta) @ amp[idx[0]]
    elif e.kind == "phase":
        amp[idx[0]] *= np.exp(1j * e.theta)
    elif e.kind == "hvbs":
        # |H,n> -> c|H,n> + s|H,m>,  |H,m> -> -s|H,n> + c|H,m>
        n, m = idx
        hn, hm = amp[n, H], amp[m, H]
        amp[n, H], amp[m, H] = c * hn - s * hm, s * hn + c * hm
    elif e.kind == "vvbs":
        # |V,m> -> c|V,n> + s|V,m>,  |V,n> -> s|V,n> - c|V,m>
        n, m = idx
        vn, vm = amp[n, V], amp[m, V]
        amp[n, V], amp[m, V] = s * vn + c * vm, -c * vn + s * vm
    return amp


def propagate(spec, amp):
    for e in spec.elements:
        amp = apply_element(e, amp)
    return amp


def run_network(spec, psi0):
    """Branch polarization states and their incoherent sum ``rho``.

    ``rho`` is not renormalized; for a unit-norm ``psi0`` it has unit trace.
    """
    out = propagate(spec, input_state(psi0, spec.n_modes))
    branches = [Branch(label, mode, out[mode - 1].copy()) for mode, label in sorted(spec.branches.items())]
    rho = np.einsum("mi,mj->ij", out, out.conj())
    return branches, rho


# -- composite variable beam splitters ------------------------------------------


def composite_hvbs(theta, n, m):
    """HVBS as a PBS between two rotators; matches the primitive on ``|H,n>``."""
    return (
        Element("rotator", (n,), theta),
        Element("pbs", (n, m)),
        Element("rotator", (m,), -np.pi / 2),
    )


def composite_vvbs(theta, n, m):
    """VVBS as a PBS between two rotators; matches the primitive on ``|V,m>``."""
    return (
        Element("rotator", (m,), -theta),
        Element("pbs", (n, m)),
        Element("rotator", (m,), np.pi / 2),
    )


# -- MEMS networks ---------------------------------------------------------------


@dataclass(frozen=True)
class Angles:
    theta_p: float
    theta_third: float
    theta_psi: float
    theta_phi: float


def angles(p):
    """VBS angles ``arccos sqrt(p)``, ``arccos sqrt(1/3)``, ``arccos(sqrt(3/2) psi+)`` and ``arccos phi+``.

    Evaluated as ``arctan2(sin, cos)`` from the closed-form sine and cosine,
    which stays accurate where the cosine is close to 1. The last two are
    only defined for ``p <= 2/3`` and are NaN above.
    """
    if p <= BOUNDARY:
        phi_p, phi_m, psi_p, psi_m = coefficients(p)
    else:
        region_of(p)
        phi_p = phi_m = psi_p = psi_m = np.nan
    return Angles(
        float(np.arctan2(np.sqrt(1 - p), np.sqrt(p))),
        float(np.arctan2(np.sqrt(2), 1.0)),
        float(np.arctan2(psi_m, psi_p)),
        float(np.arctan2(phi_m, phi_p)),
    )


FIGURES = {5: ("A", "I"), 6: ("B", "I"), 7: ("A", "II"), 8: ("B", "II")}


def build_figure_network(figure, p):
    if figure not in FIGURES:
        raise ValueError(f"figure must be one of {sorted(FIGURES)}")
    side, region = FIGURES[figure]
    if region_of(p) != region:
        lo_hi = "(2/3, 1]" if region == "I" else "[0, 2/3]"
        raise ValueError(f"figure {figure} needs p in {lo_hi}, got {p!r}")
    a = angles(p)
    if figure == 5:
        elements = (
            Element("pbs", (1, 2)),
            Element("vvbs", (1, 2), a.theta_p),
            Element("hwp", (2,), -np.pi / 4),
        )
        return NetworkSpec(elements, 2, {1: "3", 2: "1"}, "A/I")
    if figure == 6:
        elements = (
            Element("rotator", (1,), np.pi / 2),
            Element("hvbs", (1, 2), a.theta_p),
            Element("rotator", (2,), -np.pi / 2),
        )
        return NetworkSpec(elements, 2, {1: "3", 2: "1"}, "B/I")
    if figure == 7:
        elements = (
            Element("vvbs", (3, 1), a.theta_third),
            Element("hwp", (3,), -np.pi / 4),
            Element("hvbs", (1, 2), a.theta_phi),
            Element("vvbs", (2, 1), a.theta_psi),
            Element("hwp", (2,), 0.0),
        )
        return NetworkSpec(elements, 3, {1: "3", 2: "2", 3: "1"}, "A/II")
    elements = (
        Element("vvbs", (3, 1), a.theta_third),
        Element("rotator", (1,), np.pi / 2),
        Element("hvbs", (1, 2), a.theta_psi),
        Element("vvbs", (2, 1), a.theta_phi),
        Element("hwp", (1,), 0.0),
    )
    return NetworkSpec(elements, 3, {1: "2", 2: "3", 3: "1"}, "B/II")


def figure_for(side, p):
    if side not in ("A", "B"):
        raise ValueError("side must be 'A' or 'B'")
    region = region_of(p)
    return next(f for f, key in FIGURES.items() if key == (side, region))


def build_mems_network(side, p):
    """Network for the MEMS map on ``side`` at parameter ``p``; region picked from ``p``."""
    return build_figure_network(figure_for(side, p), p)


def expected_branches(side, p, psi0):
    """Closed-form branch states ``sqrt(lambda_mu) K_mu psi0`` keyed by ``mu``."""
    a_ops, b_ops = scaled_kraus(p)
    ops = a_ops if side == "A" else b_ops
    labels = ("1", "3") if p > BOUNDARY else ("1", "2", "3")
    return {label: k @ np.asarray(psi0, dtype=complex) for label, k in zip(labels, ops)}


def random_pure_inputs(trials, seed=0):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(trials, 2)) + 1j * rng.normal(size=(trials, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def network_equals_kraus(side, p, trials=20, seed=0):
    """Largest entrywise gap between the network output and the Kraus sum."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    spec = build_mems_network(side, p)
    a_ops, b_ops = scaled_kraus(p)
    ops = a_ops if side == "A" else b_ops
    worst = 0.0
    for psi in random_pure_inputs(trials, seed):
        _, rho = run_network(spec, psi)
        rho0 = np.outer(psi, psi.conj())
        ref = sum(k @ rho0 @ k.conj().T for k in ops)
        worst = max(worst, float(np.max(np.abs(rho - ref))))
    return worst
