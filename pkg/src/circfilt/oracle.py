"""Brute-force spatial-domain reference solver.

Materializes the full ``(t*N)``-by-``(d*N)`` real design matrix whose
``N``-by-``N`` blocks are the circulant operator matrices of each sample
channel, then solves the ridge normal equations by dense factorization.
Everything stays in the spatial domain with real unknowns, so the result
cross-checks the frequency-domain solver through an entirely independent
arithmetic path.

Row weighting uses ``sqrt(a_k)`` so that plain least squares on the stacked
system reproduces the weighted objective exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .solver import _check_problem
from .spectral import check_mode

__all__ = ["MAX_DENSE", "DenseSystem", "ComparisonReport", "build_dense", "dense_solve", "compare"]

# Guard against accidentally asking for a dense system with more than
# MAX_DENSE unknowns (the normal matrix is square in d*N).
MAX_DENSE = 4096


@dataclass
class DenseSystem:
    """Stacked weighted design matrix and right-hand side."""

    design: np.ndarray  # (t*N, d*N)
    rhs: np.ndarray  # (t*N,)
    lam: float
    mode: str
    channels: int
    grid_shape: tuple[int, int]


@dataclass(frozen=True)
class ComparisonReport:
    """Elementwise agreement between two filter banks."""

    max_abs: float
    max_rel: float  # max_abs relative to the largest magnitude in either bank
    tol: float
    passed: bool


def _operator_matrix(channel: np.ndarray, mode: str) -> np.ndarray:
    """N-by-N matrix sending vec(f) to vec(response) for one channel."""
    m, n = channel.shape
    N = m * n
    out_i, out_j = np.divmod(np.arange(N)[:, np.newaxis], n)  # response bin (rows)
    in_i, in_j = np.divmod(np.arange(N)[np.newaxis, :], n)  # filter coefficient (cols)
    if mode == "correlation":
        return channel[(in_i - out_i) % m, (in_j - out_j) % n]
    return channel[(out_i - in_i) % m, (out_j - in_j) % n]


def build_dense(
    samples,
    label,
    *,
    lam: float = 1e-2,
    weights=None,
    mode: str = "correlation",
) -> DenseSystem:
    """Assemble the stacked dense least-squares system.

    Zero-weight samples keep their (all-zero) row block so the stacked
    layout always holds ``t * N`` rows.
    """
    check_mode(mode)
    samples, label, weights, lam = _check_problem(
        samples, label, weights, lam, drop_zero_weights=False
    )
    t, d, m, n = samples.shape
    N = m * n
    if d * N > MAX_DENSE:
        raise ValueError(f"dense system of size {d * N} exceeds the guard {MAX_DENSE}")
    design = np.zeros((t * N, d * N))
    rhs = np.zeros(t * N)
    yvec = label.reshape(N)
    for k in range(t):
        root = np.sqrt(weights[k])
        rows = slice(k * N, (k + 1) * N)
        for l in range(d):
            cols = slice(l * N, (l + 1) * N)
            design[rows, cols] = root * _operator_matrix(samples[k, l], mode)
        rhs[rows] = root * yvec
    return DenseSystem(
        design=design,
        rhs=rhs,
        lam=lam,
        mode=mode,
        channels=d,
        grid_shape=(m, n),
    )


def dense_solve(system: DenseSystem) -> np.ndarray:
    """Solve the ridge normal equations densely; returns a spatial bank.

    ``(M^T M + lam I) w = M^T rhs`` with a dense symmetric factorization;
    the solution vector reshapes channel-major into ``(d, m, n)``.
    """
    M = system.design
    gram = M.T @ M
    gram[np.diag_indices_from(gram)] += system.lam
    w = np.linalg.solve(gram, M.T @ system.rhs)
    m, n = system.grid_shape
    return w.reshape(system.channels, m, n)


def compare(reference, candidate, tol: float = 1e-6) -> ComparisonReport:
    """Elementwise comparison of two equally shaped filter banks.

    ``max_rel`` normalizes the largest absolute deviation by the largest
    magnitude found in either bank, so near-zero entries do not blow up the
    ratio; the report passes iff ``max_rel <= tol``.
    """
    a = np.asarray(reference)
    b = np.asarray(candidate)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    max_abs = float(np.abs(a - b).max())
    scale = max(float(np.abs(a).max()), float(np.abs(b).max()))
    max_rel = max_abs / scale if scale > 0 else 0.0
    return ComparisonReport(max_abs=max_abs, max_rel=max_rel, tol=float(tol), passed=max_rel <= tol)
