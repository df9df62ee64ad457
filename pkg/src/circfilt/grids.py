"""Grid containers and index arithmetic on the periodic m-by-n lattice.

All data lives in plain numpy arrays:

* real grid      -- ``(m, n)`` float64
* spectral grid  -- ``(m, n)`` complex128
* sample         -- ``(d, m, n)`` float64, one feature channel per leading index
* filter bank    -- ``(d, m, n)``, float64 when spatial, complex128 when spectral

Grids are row-major with canonical indices in Z_m x Z_n; negative or
out-of-range indices always reduce modulo the shape, so the origin-flip
``(i, j) -> (-i, -j)`` is a well-defined involution.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_real_grid",
    "as_spectral_grid",
    "as_sample",
    "as_sample_batch",
    "flip",
    "wrap_index",
    "flip_index",
    "wrap_offset",
    "circular_distance",
]


def as_real_grid(a, name: str = "grid") -> np.ndarray:
    """Coerce to a finite 2-D float64 grid, validating shape and values."""
    g = np.asarray(a, dtype=np.float64)
    if g.ndim != 2 or g.shape[0] < 1 or g.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-D m-by-n array, got shape {g.shape}")
    if not np.isfinite(g).all():
        raise ValueError(f"{name} contains non-finite values")
    return g


def as_spectral_grid(a, name: str = "grid") -> np.ndarray:
    """Coerce to a finite 2-D complex128 grid."""
    g = np.asarray(a, dtype=np.complex128)
    if g.ndim != 2 or g.shape[0] < 1 or g.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-D m-by-n array, got shape {g.shape}")
    if not np.isfinite(g.real).all() or not np.isfinite(g.imag).all():
        raise ValueError(f"{name} contains non-finite values")
    return g


def as_sample(a, name: str = "sample") -> np.ndarray:
    """Coerce to a ``(d, m, n)`` float64 multi-channel sample.

    A bare 2-D grid is promoted to a single-channel sample.
    """
    s = np.asarray(a, dtype=np.float64)
    if s.ndim == 2:
        s = s[np.newaxis]
    if s.ndim != 3 or min(s.shape) < 1:
        raise ValueError(f"{name} must have shape (d, m, n), got {s.shape}")
    if not np.isfinite(s).all():
        raise ValueError(f"{name} contains non-finite values")
    return s


def as_sample_batch(a, name: str = "samples") -> np.ndarray:
    """Coerce to a ``(t, d, m, n)`` float64 stack of samples."""
    x = np.asarray(a, dtype=np.float64)
    if x.ndim != 4 or min(x.shape) < 1:
        raise ValueError(f"{name} must have shape (t, d, m, n), got {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError(f"{name} contains non-finite values")
    return x


def flip(g: np.ndarray) -> np.ndarray:
    """Origin flip ``out[i, j] = g[-i mod m, -j mod n]`` on the last two axes.

    An involution: ``flip(flip(g)) == g``.  Works on single grids and on
    channel stacks alike.
    """
    g = np.asarray(g)
    if g.ndim < 2:
        raise ValueError(f"flip needs at least 2 dimensions, got shape {g.shape}")
    m, n = g.shape[-2], g.shape[-1]
    ri = (m - np.arange(m)) % m
    rj = (n - np.arange(n)) % n
    return g[..., ri[:, np.newaxis], rj[np.newaxis, :]]


def wrap_index(i: int, j: int, shape: tuple[int, int]) -> tuple[int, int]:
    """Reduce an index pair to the canonical range {0..m-1} x {0..n-1}."""
    m, n = shape
    return int(i) % m, int(j) % n


def flip_index(i: int, j: int, shape: tuple[int, int]) -> tuple[int, int]:
    """Canonical index of ``(-i, -j)``."""
    m, n = shape
    return (-int(i)) % m, (-int(j)) % n


def wrap_offset(p: int, size: int) -> int:
    """Map a canonical index to the signed circular offset from the origin.

    Indices strictly above ``size / 2`` wrap negative; ``size / 2`` itself
    (even ``size``) stays positive.
    """
    p = int(p) % size
    return p - size if p > size / 2 else p


def circular_distance(i: int, j: int, shape: tuple[int, int]) -> float:
    """Euclidean distance from the origin on the torus Z_m x Z_n."""
    m, n = shape
    di = min(int(i) % m, (-int(i)) % m)
    dj = min(int(j) % n, (-int(j)) % n)
    return float(np.hypot(di, dj))
