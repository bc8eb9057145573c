"""Cyclic Jacobi eigensolver for small Hermitian matrices.

The solver works on stacks of matrices, so a batch of ``(N, n, n)``
Hermitian matrices is diagonalized with one vectorized rotation per
pivot pair. Results are deterministic: sweeps visit pivots in a fixed
order and eigenpairs are returned sorted by descending eigenvalue.
"""

import numpy as np

OFF_DIAGONAL_TOL = 1e-14
MAX_SWEEPS = 60


def jacobi_eigh(a, tol=OFF_DIAGONAL_TOL, max_sweeps=MAX_SWEEPS):
    """Eigendecomposition of Hermitian matrices by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (..., n, n)
        Hermitian matrix or stack of matrices. Only Hermitian input is
        meaningful; the anti-Hermitian part is discarded.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm of every matrix
        in the stack is below ``tol * max(1, ||a||_F)``.
    max_sweeps : int
        Hard cap on the number of sweeps.

    Returns
    -------
    w : ndarray, shape (..., n)
        Real eigenvalues, sorted descending.
    v : ndarray, shape (..., n, n)
        Unitary matrix whose columns are the matching eigenvectors.
    """
    a = np.asarray(a, dtype=complex)
    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = a.reshape((-1, n, n))
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    # batch index last so every matrix entry is a contiguous vector
    a = np.ascontiguousarray(a.transpose(1, 2, 0))
    m = a.shape[-1]
    v = np.repeat(np.eye(n, dtype=complex)[:, :, None], m, axis=2)

    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(0, 1))))
    off = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.all(np.sqrt(np.sum(np.abs(a[off]) ** 2, axis=0)) < tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = np.abs(apq)
                active = r > 1e-20 * scale
                if not np.any(active):
                    continue
                safe_r = np.where(active, r, 1.0)
                phase = np.where(active, apq / safe_r, 1.0)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * safe_r)
                sign = np.where(tau >= 0.0, 1.0, -1.0)
                t = np.where(active, sign / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                sp, sq = s * phase, s * np.conj(phase)
                cp, cq = c * phase, c * np.conj(phase)
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - sq * a[:, q]
                a[:, q] = s * col_p + cq * a[:, q]
                row_p = a[p].copy()
                a[p] = c * row_p - sp * a[q]
                a[q] = s * row_p + cp * a[q]
                a[q, p] = 0.0
                a[p, q] = 0.0
                vec_p = v[:, p].copy()
                v[:, p] = c * vec_p - sq * v[:, q]
                v[:, q] = s * vec_p + cq * v[:, q]

    w = np.real(np.diagonal(a, axis1=0, axis2=1))  # (m, n)
    v = v.transpose(2, 0, 1)
    order = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return w.reshape(batch_shape + (n,)), v.reshape(batch_shape + (n, n))


def jacobi_eigvalsh(a, **kwargs):
    """Eigenvalues only, sorted descending. See :func:`jacobi_eigh`."""
    return jacobi_eigh(a, **kwargs)[0]


def psd_sqrt(a, **kwargs):
    """Square root of a Hermitian PSD matrix (negative round-off clamped)."""
    w, v = jacobi_eigh(a, **kwargs)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))
