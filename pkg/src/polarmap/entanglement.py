"""Tangle, linear entropy, Werner-family states and the dichroic scatterer.

Conventions (standard in the MEMS literature):

* linear entropy ``S_L = 4/3 (1 - Tr rho^2)``, 0 for pure states and 1 for ``I/4``;
* Wootters concurrence ``C = max(0, s1 - s2 - s3 - s4)`` where ``s_k`` are the
  descending square roots of the eigenvalues of
  ``sqrt(rho) (Y kron Y) conj(rho) (Y kron Y) sqrt(rho)``; tangle ``tau = C^2``.

The Werner curve is parametric, ``p -> (S_L(rho_W(p)), tau(rho_W(p)))``,
which works out to ``tau = max(0, (3 sqrt(1 - S_L) - 1) / 2)^2``.
"""

import csv
import io
from dataclasses import astuple, dataclass

import numpy as np

from .exceptions import ZeroIntensityError
from .linalg import jacobi_eigh, jacobi_eigvalsh
from .mueller import diattenuator
from .qmaps import SINGLET, validate_density
from .stokes import EPS_NUM, PAULI

IDENTITY4 = np.eye(4, dtype=complex)
YY = np.kron(PAULI[2], PAULI[2])

UNITARY_TOL = 1e-10
FAMILY_TOL = 1e-9
SUB_WERNER_TOL = 1e-6
RANK_TOL = 1e-14

CLASSES = ("werner", "generalized_werner", "sub_werner", "other")


def linear_entropy(rho):
    """``4/3 (1 - Tr rho^2)``; works on a single state or a stack."""
    rho = np.asarray(rho, dtype=complex)
    return 4.0 / 3.0 * (1.0 - np.einsum("...ij,...ji->...", rho, rho).real)


def concurrence_tangle(rho):
    """Wootters concurrence and tangle of a normalized two-qubit state.

    Accepts ``(4, 4)`` or a stack ``(N, 4, 4)``; returns floats or arrays
    accordingly.

    The square roots ``s_k`` are the singular values of
    ``X = sqrt(rho) (Y kron Y) sqrt(conj(rho))``, since the spin-flipped
    product equals ``X X^dagger``. They are read off as the positive
    eigenvalues of the Hermitian dilation ``[[0, X], [X^dagger, 0]]``, which
    keeps near-zero ``s_k`` accurate to round-off instead of to its square
    root. Eigenvalues of ``rho`` below ``RANK_TOL`` are treated as zero.
    """
    rho = np.asarray(rho, dtype=complex)
    single = rho.ndim == 2
    rho = rho.reshape((-1, 4, 4))
    w, v = jacobi_eigh(rho)
    w = np.sqrt(np.where(w < RANK_TOL, 0.0, w))
    root = (v * w[:, None, :]) @ v.conj().swapaxes(-1, -2)
    x = root @ YY @ root.conj()
    dil = np.zeros((rho.shape[0], 8, 8), dtype=complex)
    dil[:, :4, 4:] = x
    dil[:, 4:, :4] = x.conj().swapaxes(-1, -2)
    roots = np.clip(jacobi_eigvalsh(dil)[:, :4], 0.0, None)
    c = np.clip(roots[:, 0] - roots[:, 1:].sum(axis=1), 0.0, 1.0)
    tau = c * c
    if single:
        return float(c[0]), float(tau[0])
    return c, tau


def tangle(rho):
    return concurrence_tangle(rho)[1]


def _check_unit(p, name="p"):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name}={p!r} outside [0, 1]")


def werner_state(p):
    """``p rho_s + (1 - p) I/4`` for ``p`` in [0, 1]."""
    _check_unit(p)
    return p * SINGLET + (1.0 - p) * IDENTITY4 / 4.0


def generalized_werner(p, t_u):
    """Werner state rotated on qubit A by the unitary Jones matrix ``t_u``."""
    t_u = np.asarray(t_u, dtype=complex)
    if t_u.shape != (2, 2) or np.max(np.abs(t_u.conj().T @ t_u - np.eye(2))) > UNITARY_TOL:
        raise ValueError("generalized Werner state needs a unitary 2x2 Jones matrix")
    u = np.kron(t_u, np.eye(2))
    return u @ werner_state(p) @ u.conj().T


def _dichroic_jones(d0, d1, theta):
    """Batched diattenuator Jones matrices, shape (N, 2, 2)."""
    c, s = np.cos(theta), np.sin(theta)
    return np.stack(
        [
            np.stack([d0 * c**2 + d1 * s**2, (d0 - d1) * c * s], axis=-1),
            np.stack([(d0 - d1) * c * s, d1 * c**2 + d0 * s**2], axis=-1),
        ],
        axis=-2,
    ).astype(complex)


def _dichroic_batch(p, d0, d1, theta):
    # (T kron I) rho_W (T kron I)^dagger, unnormalized, for arrays of parameters
    t = _dichroic_jones(d0, d1, theta)
    k = np.einsum("nij,kl->nikjl", t, np.eye(2)).reshape(-1, 4, 4)
    rho_w = p[:, None, None] * SINGLET + (1.0 - p)[:, None, None] * IDENTITY4 / 4.0
    return k @ rho_w @ k.conj().swapaxes(-1, -2)


def dichroic_unnormalized(p, d0, d1, theta):
    """``(T_H kron I) rho_W(p) (T_H kron I)^dagger`` before renormalization."""
    _check_unit(p)
    t = diattenuator(d0, d1, theta)
    k = np.kron(t, np.eye(2))
    return k @ werner_state(p) @ k.conj().T


def dichroic_sample(p, d0, d1, theta):
    """Werner state filtered by a linear diattenuator on qubit A, renormalized.

    The trace before renormalization is ``(d0^2 + d1^2) / 2``.
    """
    raw = dichroic_unnormalized(p, d0, d1, theta)
    tr = np.trace(raw).real
    if tr <= EPS_NUM:
        raise ZeroIntensityError("diattenuator blocks all light (d0 = d1 = 0)")
    return raw / tr


def dichroic_reduced_b(p, d0, d1, theta):
    """Closed-form reduced state on qubit B after the diattenuator on A."""
    ratio = (d0**2 - d1**2) / (d0**2 + d1**2)
    vec = PAULI[1] * np.sin(2 * theta) + PAULI[3] * np.cos(2 * theta)
    return PAULI[0] / 2 - p * ratio * vec / 2


def werner_tangle_at(s_l):
    """Tangle of the Werner state with linear entropy ``s_l``."""
    s_l = np.clip(np.asarray(s_l, dtype=float), 0.0, 1.0)
    c = np.maximum(0.0, (3.0 * np.sqrt(1.0 - s_l) - 1.0) / 2.0)
    return c * c


def mems_tangle_at(s_l):
    """Tangle of the MEMS family at linear entropy ``s_l`` (upper boundary)."""
    s_l = np.clip(np.asarray(s_l, dtype=float), 0.0, 1.0)
    # region I: S_L = 8/3 p (1 - p) for p >= 2/3; region II: S_L = 8/9 - 2 p^2 / 3
    p_one = (1.0 + np.sqrt(np.clip(1.0 - 1.5 * s_l, 0.0, None))) / 2.0
    p_two = np.sqrt(np.clip(1.5 * (8.0 / 9.0 - s_l), 0.0, None))
    p = np.where(s_l <= 16.0 / 27.0, p_one, p_two)
    return p * p


def _classify_batch(rho, tau, s_l, tol, sub_tol):
    w = np.linalg.eigvalsh(rho)[..., ::-1]
    q = w[:, 0] - w[:, 1]
    flat = np.max(np.abs(w[:, 1:] - (1.0 - q[:, None]) / 4.0), axis=1) <= tol
    r = rho.reshape(-1, 2, 2, 2, 2)
    half = np.eye(2) / 2
    red_a = np.einsum("nijkj->nik", r)
    red_b = np.einsum("nijil->njl", r)
    marg = (np.max(np.abs(red_a - half), axis=(1, 2)) <= tol) & (np.max(np.abs(red_b - half), axis=(1, 2)) <= tol)
    family = flat & marg & (q >= -tol)
    qc = np.clip(q, 0.0, 1.0)
    werner = qc[:, None, None] * SINGLET + (1.0 - qc)[:, None, None] * IDENTITY4 / 4.0
    exact = np.max(np.abs(rho - werner), axis=(1, 2)) <= tol
    below = tau <= werner_tangle_at(s_l) + sub_tol
    return np.where(
        family,
        np.where(exact, "werner", "generalized_werner"),
        np.where(below, "sub_werner", "other"),
    )


def classify_state(rho, tol=FAMILY_TOL, sub_tol=SUB_WERNER_TOL):
    """Place a two-qubit state in the Werner family or relative to the Werner curve.

    ``werner`` equals ``rho_W(q)`` entrywise; ``generalized_werner`` has a
    Werner spectrum and maximally mixed marginals, hence is a local-unitary
    image of a Werner state; ``sub_werner`` lies on or below the Werner curve;
    ``other`` lies above it.
    """
    rho = validate_density(rho, 4)
    _, tau = concurrence_tangle(rho)
    return str(_classify_batch(rho[None], np.array([tau]), np.array([linear_entropy(rho)]), tol, sub_tol)[0])


@dataclass(frozen=True)
class ScatterSample:
    index: int
    p: float
    d0: float
    d1: float
    theta: float
    linear_entropy: float
    tangle: float
    cls: str


def draw_parameters(n, seed):
    """Per-index draws ``(p, d0, d1, theta)``; sample ``i`` depends only on ``(seed, i)``.

    ``p, d0, d1`` are uniform on [0, 1) and ``theta`` uniform on (0, 2 pi].
    """
    if n < 1:
        raise ValueError("need at least one sample")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    u = np.empty((n, 4))
    for i in range(n):
        u[i] = np.random.Generator(np.random.Philox(key=(seed << 64) | i)).random(4)
    return u[:, 0], u[:, 1], u[:, 2], 2.0 * np.pi * (1.0 - u[:, 3])


def monte_carlo_dichroic(n, seed=0):
    """Dichroic-scatterer scatter of ``n`` samples in the (S_L, tau) plane."""
    p, d0, d1, theta = draw_parameters(n, seed)
    raw = _dichroic_batch(p, d0, d1, theta)
    tr = np.einsum("nii->n", raw).real
    if np.any(tr <= EPS_NUM):
        raise ZeroIntensityError("a draw produced d0 = d1 = 0")
    rho = raw / tr[:, None, None]
    s_l = linear_entropy(rho)
    _, tau = concurrence_tangle(rho)
    cls = _classify_batch(rho, tau, s_l, FAMILY_TOL, SUB_WERNER_TOL)
    out = []
    for i in range(n):
        out.append(
            ScatterSample(
                i, float(p[i]), float(d0[i]), float(d1[i]), float(theta[i]),
                float(s_l[i]), float(tau[i]), str(cls[i]),
            )
        )
    return out


SCATTER_HEADER = ("index", "p", "d0", "d1", "theta", "linear_entropy", "tangle", "class")


def scatter_csv(samples):
    """CSV text with a header row; floats use shortest round-trip ``repr``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCATTER_HEADER)
    for s in samples:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in astuple(s)])
    return buf.getvalue()


@dataclass(frozen=True)
class BoundaryCurve:
    label: str
    p: np.ndarray
    points: np.ndarray  # (grid, 2): linear entropy, tangle


def boundary_curves(grid=201):
    """Werner and MEMS curves sampled on a uniform ``p`` grid over [0, 1]."""
    from .mems import mems_state

    if grid < 2:
        raise ValueError("grid must have at least two points")
    ps = np.linspace(0.0, 1.0, grid)
    curves = []
    for label, make in (("werner", werner_state), ("mems", mems_state)):
        rho = np.array([make(p) for p in ps])
        s_l = linear_entropy(rho)
        _, tau = concurrence_tangle(rho)
        curves.append(BoundaryCurve(label, ps, np.column_stack([s_l, tau])))
    return tuple(curves)


def curves_csv(curves):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("label", "p", "linear_entropy", "tangle"))
    for c in curves:
        for p, (s, t) in zip(c.p, c.points):
            writer.writerow((c.label, repr(float(p)), repr(float(s)), repr(float(t))))
    return buf.getvalue()

