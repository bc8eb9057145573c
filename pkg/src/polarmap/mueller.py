"""Jones and Mueller matrices of polarizing and depolarizing elements.

Two forms of Mueller matrix are used throughout:

* the Standard-basis form ``M_std`` (complex 4x4), ``M_std = T kron conj(T)``
  for a single Jones matrix ``T``. It acts on the row-major flattening of a
  coherency/density matrix: ``vec(T J T^dagger) = M_std @ vec(J)``.
* the real form ``M = V M_std V^dagger / 2`` acting on Stokes vectors.

Composition is ordinary matrix multiplication, rightmost factor acting
first: ``compose([M2, M1])`` is ``M1`` followed by ``M2``.
"""

from dataclasses import dataclass

import numpy as np

from .stokes import EPS_NUM, PAULI, V

REALNESS_TOL = 1e-12


def mueller_std_from_jones(t):
    t = np.asarray(t, dtype=complex)
    if t.shape != (2, 2):
        raise ValueError("Jones matrix must be 2x2")
    return np.kron(t, t.conj())


def real_from_std(m_std, tol=REALNESS_TOL):
    """Pauli-basis (real) Mueller matrix ``V M_std V^dagger / 2``.

    Raises ``ValueError`` when the imaginary residue exceeds ``tol`` (times
    the matrix scale), i.e. when ``m_std`` does not come from a real
    ensemble of Jones matrices.
    """
    m = 0.5 * V @ np.asarray(m_std, dtype=complex) @ V.conj().T
    scale = max(1.0, np.max(np.abs(m)))
    if np.max(np.abs(m.imag)) > tol * scale:
        raise ValueError("Mueller matrix has a non-negligible imaginary part in the Pauli basis")
    return m.real.copy()


def std_from_real(m_real):
    """Inverse of :func:`real_from_std`: ``M_std = V^dagger M V / 2``."""
    return 0.5 * V.conj().T @ np.asarray(m_real, dtype=float) @ V


def mueller_from_jones(t):
    """Both Mueller forms of a non-depolarizing element.

    Returns
    -------
    (m_std, m_real) : tuple of ndarray
    """
    m_std = mueller_std_from_jones(t)
    return m_std, real_from_std(m_std)


def mueller_from_ensemble(members):
    """Mueller matrices of a weighted ensemble ``sum_A w_A T_A kron conj(T_A)``.

    ``members`` is an iterable of ``(weight, jones)`` pairs. Weights must be
    non-negative but need not sum to one.
    """
    members = list(members)
    if not members:
        raise ValueError("ensemble must have at least one member")
    m_std = np.zeros((4, 4), dtype=complex)
    for w, t in members:
        if w < 0:
            raise ValueError("ensemble weights must be non-negative")
        m_std += w * mueller_std_from_jones(t)
    return m_std, real_from_std(m_std)


# -- elements -----------------------------------------------------------------


def hwp(theta):
    """Half-wave plate with optic axis at angle ``theta`` from horizontal."""
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    return np.array([[-c, -s], [-s, c]], dtype=complex)


def rotator(theta):
    """Polarization rotator; equals ``hwp(t0 + theta/2) @ hwp(t0)`` for any ``t0``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def diattenuator(d0, d1, theta):
    """Linear diattenuator with amplitude transmissions ``d0`` (along ``theta``) and ``d1``.

    Reduces to a linear polarizer when either factor vanishes.
    """
    for d in (d0, d1):
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"diattenuation factor {d!r} outside [0, 1]")
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [d0 * c**2 + d1 * s**2, (d0 - d1) * c * s],
            [(d0 - d1) * c * s, d1 * c**2 + d0 * s**2],
        ],
        dtype=complex,
    )


def retarder(axis, retardance):
    """Generic elliptical retarder ``exp(-i retardance/2 * n.sigma)``.

    ``axis`` is a 3-vector on the Poincare sphere (normalized internally).
    """
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise ValueError("retarder axis must be non-zero")
    n = n / norm
    half = retardance / 2
    return np.cos(half) * PAULI[0] - 1j * np.sin(half) * np.einsum("k,kij->ij", n, PAULI[1:])


_ELEMENTS = {
    "hwp": hwp,
    "rotator": rotator,
    "diattenuator": diattenuator,
    "retarder": retarder,
}


def make_element(kind, *params):
    """Jones matrix of a named element: ``hwp``, ``rotator``, ``diattenuator`` or ``retarder``."""
    try:
        factory = _ELEMENTS[kind]
    except KeyError:
        raise ValueError(f"unknown element kind {kind!r}") from None
    return factory(*params)


def make_depolarizer(a, b, c):
    """Standard-basis Mueller matrix of a pure depolarizer with zero polarizance.

    In the real basis this is ``diag(1, a, b, c)``.
    """
    return np.array(
        [
            [(1 + c) / 2, 0, 0, (1 - c) / 2],
            [0, (a + b) / 2, (a - b) / 2, 0],
            [0, (a - b) / 2, (a + b) / 2, 0],
            [(1 - c) / 2, 0, 0, (1 + c) / 2],
        ],
        dtype=complex,
    )


def isotropic_depolarizer(p):
    return make_depolarizer(p, p, p)


def compose(ms):
    """Product ``ms[0] @ ms[1] @ ...``; the last matrix acts first."""
    ms = list(ms)
    if not ms:
        raise ValueError("nothing to compose")
    out = np.asarray(ms[0], dtype=complex)
    for m in ms[1:]:
        out = out @ np.asarray(m, dtype=complex)
    return out


def lu_chipman_product(m_diattenuator, m_retarder, m_depolarizer):
    """``M_D @ M_R @ M_Delta``: depolarizer first, then retarder, then diattenuator."""
    return compose([m_diattenuator, m_retarder, m_depolarizer])


def apply_mueller_stokes(m_real, x):
    return np.asarray(m_real, dtype=float) @ np.asarray(x, dtype=float)


def normalize(m, basis="std"):
    """Divide a Mueller matrix by its total transmittance ``M00``."""
    m = np.asarray(m)
    m00 = m00_of(m, basis)
    if abs(m00) <= EPS_NUM:
        raise ValueError("cannot normalize a Mueller matrix with M00 = 0")
    return m / m00


def m00_of(m, basis="std"):
    """Total transmittance ``M00`` read from either form."""
    m = np.asarray(m)
    if basis == "real":
        return float(np.real(m[0, 0]))
    return float(0.5 * (m[0, 0] + m[0, 3] + m[3, 0] + m[3, 3]).real)


def to_real(m, basis):
    """Real form of ``m`` given in ``basis`` (``"std"`` or ``"real"``)."""
    if basis == "std":
        return real_from_std(m)
    if basis == "real":
        return np.asarray(m, dtype=float)
    raise ValueError(f"unknown basis {basis!r}")


def to_std(m, basis):
    if basis == "std":
        return np.asarray(m, dtype=complex)
    if basis == "real":
        return std_from_real(m)
    raise ValueError(f"unknown basis {basis!r}")


@dataclass(frozen=True)
class BlockParts:
    """Block view ``[[m00, d^T], [p, W]]`` of a real Mueller matrix."""

    m00: float
    diattenuation: np.ndarray
    polarizance: np.ndarray
    w: np.ndarray


def block_parts(m_real):
    m = np.asarray(m_real, dtype=float)
    return BlockParts(float(m[0, 0]), m[0, 1:].copy(), m[1:, 0].copy(), m[1:, 1:].copy())


def from_blocks(m00, diattenuation, polarizance, w):
    m = np.empty((4, 4))
    m[0, 0] = m00
    m[0, 1:] = diattenuation
    m[1:, 0] = polarizance
    m[1:, 1:] = w
    return m
