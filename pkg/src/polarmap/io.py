"""JSON matrix documents and run configuration.

A matrix document is ``{"kind": ..., "data": ...}``. Complex kinds store
each scalar as ``[re, im]``; real kinds (``mueller_real``) store plain
numbers, and on input also accept ``[re, im]`` pairs whose imaginary part
is negligible. Floats round-trip exactly because ``json`` writes the
shortest ``repr``.
"""

import json
import os
from dataclasses import dataclass

import numpy as np

from .exceptions import ShapeError

SHAPES = {
    "jones": (2, 2),
    "mueller_std": (4, 4),
    "mueller_real": (4, 4),
    "density1": (2, 2),
    "density2": (4, 4),
}
REAL_KINDS = {"mueller_real"}
IMAG_TOL = 1e-12


def _to_complex(data):
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    return arr.astype(complex)


def parse_matrix(doc):
    """Decode a matrix document (dict or JSON text) into ``(kind, ndarray)``."""
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    if not isinstance(doc, dict) or "kind" not in doc or "data" not in doc:
        raise ValueError("matrix document needs 'kind' and 'data'")
    kind = doc["kind"]
    if kind not in SHAPES:
        raise ValueError(f"unknown matrix kind {kind!r}")
    try:
        m = _to_complex(doc["data"])
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"{kind}: data is not a rectangular numeric array") from exc
    if m.shape != SHAPES[kind]:
        raise ShapeError(f"{kind} must have shape {SHAPES[kind]}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{kind} contains non-finite values")
    if kind in REAL_KINDS:
        if np.max(np.abs(m.imag)) > IMAG_TOL:
            raise ValueError(f"{kind} has an imaginary part above {IMAG_TOL:g}")
        return kind, m.real.copy()
    return kind, m


def serialize_matrix(m, kind):
    m = np.asarray(m)
    if kind not in SHAPES:
        raise ValueError(f"unknown matrix kind {kind!r}")
    if m.shape != SHAPES[kind]:
        raise ShapeError(f"{kind} must have shape {SHAPES[kind]}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("cannot serialize non-finite values")
    if kind in REAL_KINDS:
        if np.iscomplexobj(m) and np.max(np.abs(m.imag)) > IMAG_TOL:
            raise ValueError(f"{kind} has an imaginary part above {IMAG_TOL:g}")
        data = (np.real(m).astype(float) + 0.0).tolist()
    else:
        data = complex_pairs(m)
    return {"kind": kind, "data": data}


def complex_pairs(m):
    """Nested ``[re, im]`` lists for any complex array."""
    m = np.asarray(m, dtype=complex)
    # adding 0.0 turns -0.0 into 0.0 so output does not depend on sign of zero
    return (np.stack([m.real, m.imag], axis=-1) + 0.0).tolist()


def dumps(obj):
    """Deterministic JSON: sorted keys, NaN rejected."""
    return json.dumps(obj, sort_keys=True, allow_nan=False)


def load_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(json.load(fh))


@dataclass(frozen=True)
class RunConfig:
    """Seed and sizes for stochastic and curve runs.

    ``seed`` falls back to ``$POLARMAP_SEED`` and then to 0.
    """

    seed: int = 0
    samples: int = 10_000
    grid: int = 201

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.grid < 2:
            raise ValueError("grid must be at least 2")

    @classmethod
    def resolve(cls, seed=None, samples=None, grid=None, env=None):
        env = os.environ if env is None else env
        if seed is None:
            seed = int(env.get("POLARMAP_SEED", "0"))
        kwargs = {"seed": seed}
        if samples is not None:
            kwargs["samples"] = samples
        if grid is not None:
            kwargs["grid"] = grid
        return cls(**kwargs)
