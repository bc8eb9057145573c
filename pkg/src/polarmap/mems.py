"""Maximally entangled mixed states from the singlet by a bi-local Mueller map.

For a single parameter ``p`` the pair ``(M_A, M_B)`` below sends the singlet
to ``rho_MEMS(p)``. Both single-qubit maps are trace-preserving and
non-dichroic; they are non-unital for ``p < 1`` (at ``p = 1`` the
polarizance ``1 - g`` vanishes and both maps are unitary).

Region I is ``2/3 < p <= 1`` with ``g = p``; region II is ``0 <= p <= 2/3``
with ``g = 2/3``. The boundary belongs to region II and both branches agree
there.
"""

from dataclasses import dataclass

import numpy as np

from .cloude import KrausSet, cloude_decompose, cloude_spectrum, kraus_trace_condition, kraus_unitality_condition
from .entanglement import concurrence_tangle
from .mueller import std_from_real
from .qmaps import SINGLET, apply_bilocal, partial_trace

BOUNDARY = 2.0 / 3.0


def _check_p(p):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p!r} outside [0, 1]")


def g_of(p):
    _check_p(p)
    return BOUNDARY if p <= BOUNDARY else float(p)


def region_of(p):
    _check_p(p)
    return "II" if p <= BOUNDARY else "I"


@dataclass(frozen=True)
class MemsParams:
    p: float
    region: str
    g: float

    @classmethod
    def of(cls, p):
        return cls(float(p), region_of(p), g_of(p))


def mems_state(p):
    g = g_of(p)
    return np.array(
        [
            [g / 2, 0, 0, p / 2],
            [0, 1 - g, 0, 0],
            [0, 0, 0, 0],
            [p / 2, 0, 0, g / 2],
        ],
        dtype=complex,
    )


def mems_mueller_real(p):
    """Real Mueller matrices ``(M_A, M_B)``."""
    g = g_of(p)
    s = np.sqrt(p)
    m_a = np.array([[1, 0, 0, 0], [0, s, 0, 0], [0, 0, s, 0], [1 - g, 0, 0, g]], dtype=float)
    m_b = np.array([[1, 0, 0, 0], [0, -s, 0, 0], [0, 0, s, 0], [g - 1, 0, 0, -g]], dtype=float)
    return m_a, m_b


def mems_spectrum(p):
    """Closed-form eigenvalues shared by ``H_A`` and ``H_B``, sorted descending."""
    if region_of(p) == "I":
        lam = [1 + p, 1 - p, 0.0, 0.0]
    else:
        r = np.sqrt(1 + 36 * p)
        lam = [(5 + r) / 6, 1 / 3, (5 - r) / 6, 0.0]
    return np.sort(np.asarray(lam, dtype=float))[::-1]


def coefficients(p):
    """``(phi_plus, phi_minus, psi_plus, psi_minus)`` of the region-II operators.

    The differences ``1 - (1 + 6p)/r`` and ``1 + (1 - 9p)/r`` are rewritten
    without cancellation so that the coefficients vanishing at ``p = 2/3``
    come out as exact zeros. Only defined for ``p <= 2/3``.
    """
    if region_of(p) != "II":
        raise ValueError(f"coefficients need p in [0, 2/3], got {p!r}")
    r = np.sqrt(1 + 36 * p)
    gap = 2 - 3 * p
    phi_p2 = (1 + (1 + 6 * p) / r) / 2
    phi_m2 = 6 * p * gap / (r * (r + 1 + 6 * p))
    psi_p2 = 9 * p * gap / (r * (r + 9 * p - 1)) if p > 0 else 2 / 3
    psi_m2 = (1 - (1 - 9 * p) / r) / 3
    return tuple(float(np.sqrt(x)) for x in (phi_p2, phi_m2, psi_p2, psi_m2))


def scaled_kraus(p):
    """``sqrt(lambda) A`` and ``sqrt(lambda) B`` operators; may contain zero operators."""
    if region_of(p) == "I":
        sp, sq = np.sqrt(p), np.sqrt(1 - p)
        a_ops = [np.array([[0, sq], [0, 0]]), np.array([[1, 0], [0, sp]])]
        b_ops = [np.array([[0, 0], [0, sq]]), np.array([[0, -sp], [1, 0]])]
    else:
        fp, fm, sp, sm = coefficients(p)
        t = 1 / np.sqrt(3)
        a_ops = [np.array([[0, t], [0, 0]]), np.array([[-fm, 0], [0, sp]]), np.array([[fp, 0], [0, sm]])]
        b_ops = [np.array([[0, 0], [0, t]]), np.array([[0, sp], [fm, 0]]), np.array([[0, -sm], [fp, 0]])]
    return [k.astype(complex) for k in a_ops], [k.astype(complex) for k in b_ops]


def mems_kraus(p, tol=1e-14):
    """Weighted Kraus sets ``(A, B)`` in closed form; vanishing operators dropped."""
    a_ops, b_ops = scaled_kraus(p)
    return KrausSet.from_scaled(a_ops, tol), KrausSet.from_scaled(b_ops, tol)


@dataclass(frozen=True)
class MemsMapPair:
    params: MemsParams
    m_a: np.ndarray
    m_b: np.ndarray
    kraus_a: KrausSet
    kraus_b: KrausSet
    spectrum: np.ndarray


def mems_mueller_pair(p):
    m_a, m_b = mems_mueller_real(p)
    ka, kb = mems_kraus(p)
    return MemsMapPair(MemsParams.of(p), m_a, m_b, ka, kb, mems_spectrum(p))


def verify_mems(p):
    """Maximum deviations of the constructed map from every MEMS target.

    All entries are absolute errors except ``tangle`` (the output tangle,
    expected to be ``p^2``) and ``spectrum_a``/``spectrum_b`` (deviation of
    the numerical Cloude spectra from the closed form).
    """
    pair = mems_mueller_pair(p)
    g = pair.params.g
    target = mems_state(p)
    rho, tr = apply_bilocal(std_from_real(pair.m_a), std_from_real(pair.m_b), SINGLET)
    expected_spec = pair.spectrum
    out = {
        "p": float(p),
        "region": pair.params.region,
        "trace": float(abs(tr - 1.0)),
        "state": float(np.max(np.abs(rho - target))),
        "imaginary": float(np.max(np.abs(rho.imag))),
        "reduced_a": float(np.max(np.abs(partial_trace(rho, "A") - np.diag([1 - g / 2, g / 2])))),
        "reduced_b": float(np.max(np.abs(partial_trace(rho, "B") - np.diag([g / 2, 1 - g / 2])))),
        "spectrum_a": float(np.max(np.abs(cloude_spectrum(std_from_real(pair.m_a)) - expected_spec))),
        "spectrum_b": float(np.max(np.abs(cloude_spectrum(std_from_real(pair.m_b)) - expected_spec))),
    }
    unital_a = np.diag([2 - g, g])
    unital_b = np.diag([g, 2 - g])
    for side, ks, m, u in (("a", pair.kraus_a, pair.m_a, unital_a), ("b", pair.kraus_b, pair.m_b, unital_b)):
        out[f"kraus_trace_{side}"] = float(np.max(np.abs(kraus_trace_condition(ks) - np.eye(2))))
        out[f"kraus_unital_{side}"] = float(np.max(np.abs(kraus_unitality_condition(ks) - u)))
        out[f"kraus_mueller_{side}"] = float(np.max(np.abs(ks.mueller_std() - std_from_real(m))))
        cloude = cloude_decompose(std_from_real(m))
        out[f"cloude_mueller_{side}"] = float(np.max(np.abs(cloude.mueller_std() - ks.mueller_std())))
    out["tangle"] = concurrence_tangle(rho)[1]
    out["tangle_error"] = float(abs(out["tangle"] - p * p))
    return out
