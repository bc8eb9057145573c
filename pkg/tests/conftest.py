import numpy as np
import pytest

from polarmap.mueller import mueller_std_from_jones


def random_jones(rng, passive=True):
    t = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    if passive:
        t = t / np.linalg.svd(t, compute_uv=False)[0] * rng.uniform(0.1, 1.0)
    return t


def random_ensemble(rng, max_terms=4):
    k = rng.integers(1, max_terms + 1)
    return [(rng.uniform(0.0, 1.0), random_jones(rng)) for _ in range(k)]


def random_unitary(rng):
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_tp_kraus(rng, rank=4):
    """Kraus operators of a random trace-preserving qubit channel (columns of an isometry)."""
    z = rng.normal(size=(2 * rank, 2)) + 1j * rng.normal(size=(2 * rank, 2))
    q, _ = np.linalg.qr(z)
    return q.reshape(rank, 2, 2)


def random_tp_mueller(rng, rank=4):
    """Standard-basis Mueller matrix of a random trace-preserving (M00=1, d=0) map."""
    return sum(mueller_std_from_jones(k) for k in random_tp_kraus(rng, rank))


def random_m00_one(rng):
    """Random physical map normalized to M00 = 1 (generally dichroic)."""
    m = sum(w * mueller_std_from_jones(t) for w, t in random_ensemble(rng))
    m00 = 0.5 * (m[0, 0] + m[0, 3] + m[3, 0] + m[3, 3]).real
    return m / m00


def random_density(rng, dim=4, rank=None):
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    r = a @ a.conj().T
    return r / np.trace(r).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
