"""Coherency matrices of Jones vectors and their Stokes parameters.

Conventions
-----------
* A Jones vector is a complex 2-vector ``(e0, e1)``.
* The coherency matrix is ``J[i, j] = e_i * conj(e_j)``.
* Pauli basis ``PAULI[alpha]`` and Standard basis ``STANDARD[beta]``;
  Stokes parameters ``x_alpha = Tr(PAULI[alpha] @ J)`` and standard
  components ``y = (J00, J01, J10, J11)`` are related by ``x = V @ y``.

Intensities are kept raw: nothing here rescales to unit trace unless the
function says so.
"""

import numpy as np

from .exceptions import NonHermitianError, ZeroIntensityError

EPS_NUM = 1e-12
EPS_PSD = 1e-10
HERMITIAN_TOL = 1e-10

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

STANDARD = np.array(
    [
        [[1, 0], [0, 0]],
        [[0, 1], [0, 0]],
        [[0, 0], [1, 0]],
        [[0, 0], [0, 1]],
    ],
    dtype=complex,
)

# V[alpha, beta] = Tr(PAULI[alpha] @ STANDARD[beta])
V = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1j, -1j, 0],
        [1, 0, 0, -1],
    ],
    dtype=complex,
)


def is_hermitian(a, tol=HERMITIAN_TOL):
    a = np.asarray(a)
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol * max(1.0, np.max(np.abs(a), initial=0.0)))


def check_hermitian(a, tol=HERMITIAN_TOL, what="matrix"):
    if not is_hermitian(a, tol):
        raise NonHermitianError(f"{what} is not Hermitian within {tol:g}")


def jones_vector(e0, e1):
    """Build a Jones vector, rejecting non-finite components."""
    e = np.array([e0, e1], dtype=complex)
    if not np.all(np.isfinite(e)):
        raise ValueError("Jones vector components must be finite")
    return e


def coherency_from_jones(e):
    """Rank-1 coherency matrix ``J = e e^dagger`` of a polarized beam."""
    e = np.asarray(e, dtype=complex)
    if e.shape != (2,) or not np.all(np.isfinite(e)):
        raise ValueError("expected a finite complex 2-vector")
    return np.outer(e, e.conj())


def stokes_from_coherency(j):
    """Stokes parameters ``x_alpha = Tr(X_alpha J)`` of a Hermitian coherency matrix."""
    j = np.asarray(j, dtype=complex)
    check_hermitian(j, what="coherency matrix")
    x = np.einsum("aij,ji->a", PAULI, j)
    return x.real.copy()


def coherency_from_stokes(x):
    """``J = 1/2 sum_alpha x_alpha X_alpha``. No PSD check is made here."""
    x = np.asarray(x, dtype=float)
    if x.shape != (4,) or not np.all(np.isfinite(x)):
        raise ValueError("expected a finite real 4-vector")
    return 0.5 * np.einsum("a,aij->ij", x, PAULI)


def standard_components(j):
    """Standard-basis components ``y = (J00, J01, J10, J11)``."""
    return np.asarray(j, dtype=complex).reshape(4).copy()


def pauli_from_standard(y):
    """Map standard components to Pauli components, ``x = V y``.

    The result is complex in general; it is real exactly when ``y`` comes
    from a Hermitian matrix.
    """
    return V @ np.asarray(y, dtype=complex)


def standard_from_pauli(x):
    """Inverse of :func:`pauli_from_standard`, ``y = V^dagger x / 2``."""
    return V.conj().T @ np.asarray(x, dtype=complex) / 2


def degree_of_polarization(j):
    """Degree of polarization from ``Det J = (Tr J)^2 (1 - P^2) / 4``.

    Tiny negative discriminants from round-off are clamped, so the result
    always lies in [0, 1].
    """
    j = np.asarray(j, dtype=complex)
    tr = np.trace(j).real
    if tr <= EPS_NUM:
        raise ZeroIntensityError("degree of polarization undefined for zero intensity")
    det = (j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]).real
    return float(min(1.0, np.sqrt(max(0.0, 1.0 - 4.0 * det / tr**2))))


def is_valid_coherency(j, eps_psd=EPS_PSD):
    """Hermitian, non-negative trace and PSD on the unit-trace scale."""
    j = np.asarray(j, dtype=complex)
    if not is_hermitian(j):
        return False
    tr = np.trace(j).real
    if tr < -eps_psd:
        return False
    if tr <= 0.0:
        return bool(np.max(np.abs(j)) <= eps_psd)
    w = np.linalg.eigvalsh(0.5 * (j + j.conj().T) / tr)
    return bool(w[0] >= -eps_psd)


def is_valid_stokes(x, eps_psd=EPS_PSD):
    """``x0 >= 0`` and ``|x_vec| <= x0`` within tolerance."""
    x = np.asarray(x, dtype=float)
    scale = max(1.0, abs(x[0]))
    return bool(x[0] >= -eps_psd * scale and np.linalg.norm(x[1:]) <= x[0] + eps_psd * scale)
