"""One- and two-qubit states transformed by Mueller-described maps.

Two-qubit states use the basis ``|00>, |01>, |10>, |11>`` with qubit A as
the left (most significant) factor. The reshuffled state
``rho^R[ik, jl] = rho[ij, kl]`` has qubit-A indices on its rows and
qubit-B indices on its columns, so a bi-local map acts as
``rho_out^R = M_A @ rho^R @ M_B.T``.
"""

from dataclasses import dataclass

import numpy as np

from .cloude import KrausSet, cloude_decompose, reshuffle
from .exceptions import NonHermitianError, ShapeError, UnphysicalError, ZeroIntensityError
from .mueller import m00_of
from .stokes import EPS_NUM, EPS_PSD, HERMITIAN_TOL, PAULI

TRACE_TOL = 1e-12

SINGLET = 0.25 * (
    np.kron(PAULI[0], PAULI[0])
    - np.kron(PAULI[1], PAULI[1])
    - np.kron(PAULI[2], PAULI[2])
    - np.kron(PAULI[3], PAULI[3])
)


def _ket_dm(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def bell_states():
    """The four Bell states as density matrices, keyed by name."""
    s = 1 / np.sqrt(2)
    return {
        "phi+": _ket_dm([s, 0, 0, s]),
        "phi-": _ket_dm([s, 0, 0, -s]),
        "psi+": _ket_dm([0, s, s, 0]),
        "psi-": _ket_dm([0, s, -s, 0]),
    }


def validate_density(rho, dim=None, normalized=True, eps_psd=EPS_PSD):
    """Check Hermiticity, PSD (relative to trace) and, optionally, unit trace.

    Returns the matrix as a complex array.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or (dim is not None and rho.shape[0] != dim):
        raise ShapeError(f"density matrix has shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise NonHermitianError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if normalized and abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    if tr <= 0:
        raise ZeroIntensityError("density matrix has non-positive trace")
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T) / tr)
    if w[0] < -eps_psd:
        raise UnphysicalError(f"density matrix has negative eigenvalue {w[0]:.3g}")
    return rho


def _normalize(rho_tilde):
    tr = float(np.trace(rho_tilde).real)
    if tr <= EPS_NUM:
        raise ZeroIntensityError("output trace vanishes; the map absorbs this input completely")
    return rho_tilde / tr, tr


# -- one qubit ---------------------------------------------------------------


def apply_one_qubit_unnormalized(m_std, rho):
    """``rho~[ij] = M[ij, kl] rho[kl]``."""
    m_std = np.asarray(m_std, dtype=complex)
    return (m_std @ np.asarray(rho, dtype=complex).reshape(4)).reshape(2, 2)


def output_trace(m_real, rho):
    """Closed-form output trace for a unit-trace input.

    ``M00 + M01 (r01 + r10) + i M02 (r01 - r10) + M03 (r00 - r11)``.
    """
    m = np.asarray(m_real, dtype=float)
    r = np.asarray(rho, dtype=complex)
    val = (
        m[0, 0]
        + m[0, 1] * (r[0, 1] + r[1, 0])
        + 1j * m[0, 2] * (r[0, 1] - r[1, 0])
        + m[0, 3] * (r[0, 0] - r[1, 1])
    )
    return float(val.real)


def apply_one_qubit(m_std, rho):
    """Apply a one-qubit map and renormalize.

    Returns
    -------
    (rho_out, trace) : (ndarray, float)
        Normalized output and the trace of the un-normalized output, i.e.
        the transmitted fraction.
    """
    rho = validate_density(rho, dim=2)
    return _normalize(apply_one_qubit_unnormalized(m_std, rho))


# -- two qubits --------------------------------------------------------------


def reshuffle_state(rho):
    """``rho^R[ik, jl] = rho[ij, kl]``; self-inverse."""
    return reshuffle(np.asarray(rho, dtype=complex))


unreshuffle_state = reshuffle_state


def apply_bilocal_unnormalized(m_a, m_b, rho):
    """``(M_A kron M_B)`` acting on ``rho^R``, returned in the ordinary layout."""
    r = reshuffle_state(rho)
    out = np.asarray(m_a, dtype=complex) @ r @ np.asarray(m_b, dtype=complex).T
    return reshuffle_state(out)


def apply_bilocal(m_a, m_b, rho):
    """Bi-local map ``E_A kron E_B`` from two Standard-basis Mueller matrices.

    Returns the normalized state and the trace of the un-normalized output.
    """
    rho = validate_density(rho, dim=4)
    return _normalize(apply_bilocal_unnormalized(m_a, m_b, rho))


def apply_kraus_bilocal(ks_a, ks_b, rho):
    """Reference route: ``sum lam_mu lam_nu (A_mu kron B_nu) rho (A_mu kron B_nu)^dagger``.

    No normalization.
    """
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for la, a in ks_a:
        for lb, b in ks_b:
            k = np.kron(a, b)
            out += la * lb * k @ rho @ k.conj().T
    return out


IDENTITY_KRAUS = KrausSet(np.array([1.0]), np.eye(2, dtype=complex)[None])


def apply_to_singlet(m_std, tol=TRACE_TOL):
    """``rho_E = (M rho_s^R)^R`` for a map on qubit A with ``M00 = 1``.

    No renormalization is performed; the equality is exact for any map
    normalized to unit total transmittance.
    """
    m00 = m00_of(m_std)
    if abs(m00 - 1.0) > tol:
        raise ValueError(f"apply_to_singlet needs M00 = 1, got {m00!r}")
    return reshuffle_state(np.asarray(m_std, dtype=complex) @ reshuffle_state(SINGLET))


def purity(rho):
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def purity_from_mueller(m_real, tol=TRACE_TOL):
    """Purity of the singlet sent through a ``M00 = 1`` map on one qubit: ``Tr(M M^T) / 4``."""
    m = np.asarray(m_real, dtype=float)
    if abs(m[0, 0] - 1.0) > tol:
        raise ValueError(f"purity_from_mueller needs M00 = 1, got {m[0, 0]!r}")
    return float(np.trace(m @ m.T) / 4)


def partial_trace(rho, keep):
    """Reduced state of the qubit named by ``keep`` (``"A"`` or ``"B"``).

    Works for normalized and un-normalized inputs alike.
    """
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ValueError("keep must be 'A' or 'B'")


@dataclass(frozen=True)
class StateBlocks:
    """2x2 blocks of a two-qubit matrix ``[[a, b], [c, d]]`` (qubit-A index outermost)."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    @classmethod
    def of(cls, rho):
        r = np.asarray(rho, dtype=complex)
        return cls(r[:2, :2], r[:2, 2:], r[2:, :2], r[2:, 2:])


def traced_output(m_real, rho):
    """Reduced state of qubit B after a map on qubit A, from the input blocks.

    ``(A + D) + M01 (B + C) + i M02 (B - C) + M03 (A - D)``, the
    un-normalized partial trace of ``(M rho^R)^R`` over qubit A.
    """
    m = np.asarray(m_real, dtype=float)
    s = StateBlocks.of(rho)
    return m[0, 0] * (s.a + s.d) + m[0, 1] * (s.b + s.c) + 1j * m[0, 2] * (s.b - s.c) + m[0, 3] * (s.a - s.d)


# -- 16x16 two-qubit Mueller matrices ----------------------------------------


def build_two_qubit_mueller(m_a, m_b):
    """Separable two-qubit Mueller matrix ``M_A kron M_B`` (16x16)."""
    return np.kron(np.asarray(m_a, dtype=complex), np.asarray(m_b, dtype=complex))


def from_combo(combo):
    """Non-separable combination ``sum w_AB M_A kron M_B`` of ``(w, m_a, m_b)`` triples."""
    combo = list(combo)
    if not combo:
        raise ValueError("combination must have at least one term")
    out = np.zeros((16, 16), dtype=complex)
    for w, m_a, m_b in combo:
        if w < 0:
            raise ValueError("combination weights must be non-negative")
        out += w * build_two_qubit_mueller(m_a, m_b)
    return out


def apply_two_qubit_mueller(m16, rho):
    """Un-normalized output of a 16x16 Mueller matrix acting on ``vec(rho^R)`` (row-major)."""
    y = reshuffle_state(rho).reshape(16)
    return reshuffle_state((np.asarray(m16, dtype=complex) @ y).reshape(4, 4))


def separable_residual(m16):
    """Relative residual of the best ``M_A kron M_B`` fit to a 16x16 matrix.

    Zero exactly for separable products; computed from the singular values
    of the Van Loan rearrangement.
    """
    m = np.asarray(m16, dtype=complex).reshape(4, 4, 4, 4).transpose(0, 2, 1, 3).reshape(16, 16)
    s = np.linalg.svd(m, compute_uv=False)
    total = np.sqrt(np.sum(s**2))
    return float(np.sqrt(np.sum(s[1:] ** 2)) / total) if total > 0 else 0.0


# -- singlet output in block parameters --------------------------------------


def singlet_output_components(a, b, A, B):
    """Two-qubit output for the singlet under a pair of trace-preserving maps.

    ``a, b`` are the polarizance vectors and ``A, B`` the 3x3 lower-right
    blocks of real Mueller matrices ``[[1, 0], [a, A]]`` and
    ``[[1, 0], [b, B]]``. The output is assembled entry by entry from the
    polarizances and ``C = A @ B.T``.
    """
    a1, a2, a3 = np.asarray(a, dtype=float)
    b1, b2, b3 = np.asarray(b, dtype=float)
    C = np.asarray(A, dtype=float) @ np.asarray(B, dtype=float).T
    c = {(i + 1, j + 1): C[i, j] for i in range(3) for j in range(3)}

    alpha_pp = (1 + a3) + (b3 * (1 + a3) - c[3, 3])
    alpha_mp = (1 + a3) - (b3 * (1 + a3) - c[3, 3])
    alpha_pm = (1 - a3) + (b3 * (1 - a3) + c[3, 3])
    alpha_mm = (1 - a3) - (b3 * (1 - a3) + c[3, 3])

    beta_p = b1 + (a3 * b1 - c[3, 1])
    beta_m = b1 - (a3 * b1 - c[3, 1])
    gamma_p = a1 + (a1 * b3 - c[1, 3])
    gamma_m = a1 - (a1 * b3 - c[1, 3])
    delta_p = a1 * b1 - c[1, 1] - (a2 * b2 - c[2, 2])
    delta_m = a1 * b1 - c[1, 1] + (a2 * b2 - c[2, 2])

    xi_p = b2 + (a3 * b2 - c[3, 2])
    xi_m = b2 - (a3 * b2 - c[3, 2])
    eta_p = a2 + (a2 * b3 - c[2, 3])
    eta_m = a2 - (a2 * b3 - c[2, 3])
    tau_p = a2 * b1 - c[2, 1] + (a1 * b2 - c[1, 2])
    tau_m = a2 * b1 - c[2, 1] - (a1 * b2 - c[1, 2])

    re = np.array(
        [
            [alpha_pp, beta_p, gamma_p, delta_p],
            [beta_p, alpha_mp, delta_m, gamma_m],
            [gamma_p, delta_m, alpha_pm, beta_m],
            [delta_p, gamma_m, beta_m, alpha_mm],
        ]
    )
    im = np.array(
        [
            [0, -xi_p, -eta_p, -tau_p],
            [xi_p, 0, -tau_m, -eta_m],
            [eta_p, tau_m, 0, -xi_m],
            [tau_p, eta_m, xi_m, 0],
        ]
    )
    return (re + 1j * im) / 4


def cloude_pair(m_a, m_b):
    """Cloude decompositions of both maps (helper for the Kraus reference route)."""
    return cloude_decompose(m_a), cloude_decompose(m_b)

