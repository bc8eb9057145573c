"""Reshuffling, Cloude (Choi/Kraus) decomposition and map classification.

The reshuffled matrix ``H[ij, kl] = M_std[ik, jl]`` of a Standard-basis
Mueller matrix is the Choi (dynamical) matrix of the corresponding
one-qubit map. Its eigenpairs ``(lambda_mu, u_mu)`` give Jones matrices
``T_mu = u_mu.reshape(2, 2)`` with ``M_std = sum lambda_mu T_mu kron conj(T_mu)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import NonHermitianError, UnphysicalError
from .linalg import jacobi_eigh
from .mueller import block_parts, m00_of, mueller_std_from_jones, to_real, to_std
from .stokes import EPS_PSD, HERMITIAN_TOL

CLASSIFY_TOL = 1e-9


def reshuffle(m):
    """Swap the middle two indices of a 4x4 matrix viewed as ``[i, j, k, l]``.

    Self-inverse. Maps a Standard-basis Mueller matrix to its ``H`` matrix
    and back, and a two-qubit density matrix to ``rho^R`` and back.
    """
    m = np.asarray(m)
    if m.shape[-2:] != (4, 4):
        raise ValueError("reshuffle expects 4x4 matrices")
    lead = m.shape[:-2]
    return m.reshape(lead + (2, 2, 2, 2)).swapaxes(-3, -2).reshape(lead + (4, 4)).copy()


unreshuffle = reshuffle


@dataclass(frozen=True)
class KrausSet:
    """Weighted Jones matrices ``{(lambda_mu, T_mu)}``, sorted by descending weight.

    Operators from :func:`cloude_decompose` are orthonormal in the
    Hilbert-Schmidt sense, ``Tr(T_mu^dagger T_nu) = delta_mu_nu``.
    """

    weights: np.ndarray
    operators: np.ndarray
    eigenvalues: np.ndarray = field(default=None, compare=False)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(zip(self.weights, self.operators))

    def mueller_std(self):
        """Reconstruct ``sum lambda T kron conj(T)``."""
        out = np.zeros((4, 4), dtype=complex)
        for lam, t in self:
            out += lam * mueller_std_from_jones(t)
        return out

    def scaled(self):
        """Operators multiplied by ``sqrt(lambda)``, the usual Kraus normalization."""
        return np.sqrt(self.weights)[:, None, None] * self.operators

    def apply(self, rho):
        """``sum lambda T rho T^dagger`` (no renormalization)."""
        rho = np.asarray(rho, dtype=complex)
        return np.einsum("m,mij,jk,mlk->il", self.weights, self.operators, rho, self.operators.conj())

    @classmethod
    def from_scaled(cls, operators, tol=0.0):
        """Build from ``sqrt(lambda) T`` operators; zero operators are dropped."""
        ops = [np.asarray(k, dtype=complex) for k in operators]
        weights, unit = [], []
        for k in ops:
            lam = float(np.vdot(k, k).real)
            if lam <= tol:
                continue
            weights.append(lam)
            unit.append(k / np.sqrt(lam))
        order = np.argsort(-np.asarray(weights), kind="stable")
        return cls(np.asarray(weights)[order], np.asarray(unit).reshape(-1, 2, 2)[order])


def _canonical_phase(u):
    # largest-magnitude entry made real-positive; ties resolved to the first index
    mags = np.abs(u)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    return u * (np.conj(u[k]) / mags[k]) if mags[k] > 0 else u


def h_matrix(m_std):
    return reshuffle(np.asarray(m_std, dtype=complex))


def cloude_spectrum(m_std):
    """Eigenvalues of ``H(M_std)`` (descending, unclamped)."""
    h = h_matrix(m_std)
    _check_h_hermitian(h)
    return jacobi_eigh(h)[0]


def _check_h_hermitian(h):
    scale = max(1.0, np.max(np.abs(h)))
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL * scale:
        raise NonHermitianError("H matrix is not Hermitian; the Mueller matrix is not a real ensemble")


def cloude_decompose(m_std, eps_psd=EPS_PSD, keep_zero=False):
    """Spectral (Cloude) decomposition of a Standard-basis Mueller matrix.

    Parameters
    ----------
    m_std : array_like, shape (4, 4)
    eps_psd : float
        Eigenvalues in ``[-eps_psd * scale, 0)`` are clamped to zero, where
        ``scale = max(1, M00)``; anything more negative is rejected.
    keep_zero : bool
        Keep zero-weight terms (always four terms) instead of dropping them.

    Raises
    ------
    NonHermitianError
        If ``H`` is not Hermitian.
    UnphysicalError
        If ``H`` has an eigenvalue below ``-eps_psd``.
    """
    m_std = np.asarray(m_std, dtype=complex)
    h = h_matrix(m_std)
    _check_h_hermitian(h)
    w, v = jacobi_eigh(h)
    scale = max(1.0, abs(m00_of(m_std)))
    if w[-1] < -eps_psd * scale:
        raise UnphysicalError(f"H has negative eigenvalue {w[-1]:.3g}; map is not physical")
    lam = np.where(w < 0, 0.0, w)
    ops = np.array([_canonical_phase(v[:, mu]).reshape(2, 2) for mu in range(4)])
    if not keep_zero:
        nz = lam > eps_psd * scale
        return KrausSet(lam[nz], ops[nz], eigenvalues=w)
    return KrausSet(lam, ops, eigenvalues=w)


def kraus_trace_condition(ks):
    """``sum lambda T^dagger T``; the identity for a trace-preserving map."""
    return np.einsum("m,mji,mjk->ik", ks.weights, ks.operators.conj(), ks.operators)


def kraus_unitality_condition(ks):
    """``sum lambda T T^dagger``; proportional to the identity for a unital map."""
    return np.einsum("m,mij,mkj->ik", ks.weights, ks.operators, ks.operators.conj())


@dataclass(frozen=True)
class MapClassification:
    physical: bool
    trace_preserving: bool
    unital: bool
    dichroic: bool
    min_eigenvalue: float
    diattenuation_norm: float
    polarizance_norm: float

    def to_dict(self):
        return {
            "physical": self.physical,
            "trace_preserving": self.trace_preserving,
            "unital": self.unital,
            "dichroic": self.dichroic,
            "min_eigenvalue": self.min_eigenvalue,
            "diattenuation_norm": self.diattenuation_norm,
            "polarizance_norm": self.polarizance_norm,
        }


def classify(m, basis="std", tol=CLASSIFY_TOL, eps_psd=EPS_PSD):
    """Properties of a Mueller matrix read as a single-qubit quantum map.

    A map is trace-preserving iff ``M00 = 1`` and ``d = 0``, and unital iff
    additionally ``p = 0``. Norm comparisons use ``tol``.
    """
    m_std = to_std(m, basis)
    m_real = to_real(m_std, "std")
    parts = block_parts(m_real)
    h = h_matrix(m_std)
    _check_h_hermitian(h)
    w = jacobi_eigh(h)[0]
    scale = max(1.0, abs(parts.m00))
    d_norm = float(np.linalg.norm(parts.diattenuation))
    p_norm = float(np.linalg.norm(parts.polarizance))
    dichroic = d_norm > tol
    tp = abs(parts.m00 - 1.0) <= tol and not dichroic
    return MapClassification(
        physical=bool(w[-1] >= -eps_psd * scale),
        trace_preserving=bool(tp),
        unital=bool(tp and p_norm <= tol),
        dichroic=bool(dichroic),
        min_eigenvalue=float(w[-1]),
        diattenuation_norm=d_norm,
        polarizance_norm=p_norm,
    )
