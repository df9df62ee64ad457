"""Closed-form frequency-domain ridge solvers for circular filter learning.

Given training samples ``x_1 .. x_t`` (each ``d`` channels of shape
``(m, n)``), nonnegative sample weights ``a_k`` and ridge weight
``lam > 0``, both objectives

    sum_k a_k * || sum_l x_k^l (*) f^l - y ||^2  +  lam * sum_l ||f^l||^2

with ``(*)`` either circular correlation or circular convolution decouple
in the frequency domain into one d-by-d Hermitian positive definite system
per frequency bin.  Writing ``v_k(p, q)`` for the d-vector of channel
spectra at bin ``(p, q)`` and

    w_k = conj(v_k)   (correlation)        w_k = v_k   (convolution)

the per-bin system is

    A(p, q) = sum_k a_k * outer(conj(w_k), w_k) + lam * I_d
    b(p, q) = sum_k a_k * conj(w_k) * yhat(p, q)

and the spectral filter at that bin is ``A(p, q)^-1 b(p, q)``.  Since the
two modes' systems are elementwise conjugate, a real-spectrum label forces
the optimal filters to be conjugate as well.

Cost is ``O(N * (t*d^2 + d^3))`` for ``N = m*n`` bins; the dense
``dN``-by-``dN`` system is never materialized.
"""

from __future__ import annotations

import numpy as np

from .grids import as_real_grid, as_sample_batch
from .spectral import check_mode, dft2, idft2, take_real

__all__ = [
    "assemble_bin_systems",
    "solve_filter",
    "filter_to_spatial",
    "objective_value",
    "mse",
]


def _check_problem(samples, label, weights, lam, drop_zero_weights: bool = True):
    samples = as_sample_batch(samples, "samples")
    label = as_real_grid(label, "label")
    t = samples.shape[0]
    if samples.shape[2:] != label.shape:
        raise ValueError(
            f"sample grids {samples.shape[2:]} do not match label {label.shape}"
        )
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if weights is None:
        weights = np.full(t, 1.0 / t)
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (t,):
        raise ValueError(f"weights must have shape ({t},), got {weights.shape}")
    if not np.isfinite(weights).all() or (weights < 0).any():
        raise ValueError("weights must be finite and nonnegative")
    if not (weights > 0).any():
        raise ValueError("weights must not be all zero")
    if drop_zero_weights:
        # zero-weight samples contribute nothing; drop them from the reduction
        keep = weights > 0
        samples, weights = samples[keep], weights[keep]
    return samples, label, weights, float(lam)


def assemble_bin_systems(
    samples,
    label,
    *,
    lam: float = 1e-2,
    weights=None,
    mode: str = "correlation",
) -> tuple[np.ndarray, np.ndarray]:
    """Assemble the per-bin normal equations.

    Returns
    -------
    A : (m, n, d, d) complex128
        Hermitian positive definite system matrix of every frequency bin.
    b : (m, n, d) complex128
        Right-hand side of every bin.
    """
    check_mode(mode)
    samples, label, weights, lam = _check_problem(samples, label, weights, lam)
    d = samples.shape[1]
    spectra = dft2(samples)  # (t, d, m, n)
    w = np.conj(spectra) if mode == "correlation" else spectra
    yhat = dft2(label)
    # plain einsum keeps a fixed reduction order, so results are bitwise
    # reproducible regardless of BLAS threading
    A = np.einsum("k,kipq,kjpq->pqij", weights, np.conj(w), w)
    A[..., np.arange(d), np.arange(d)] += lam
    b = np.einsum("k,kipq,pq->pqi", weights, np.conj(w), yhat)
    return A, b


def solve_filter(
    samples,
    label,
    *,
    lam: float = 1e-2,
    weights=None,
    mode: str = "correlation",
) -> np.ndarray:
    """Solve the ridge problem in closed form; returns the spectral bank.

    Returns the ``(d, m, n)`` complex128 filter whose bin values solve the
    per-bin systems of :func:`assemble_bin_systems`.  For real samples and a
    real-spectrum label the result is Hermitian-symmetric per channel, so
    its inverse transform is real.
    """
    A, b = assemble_bin_systems(samples, label, lam=lam, weights=weights, mode=mode)
    solution = np.linalg.solve(A, b[..., np.newaxis])[..., 0]  # (m, n, d)
    return np.ascontiguousarray(np.moveaxis(solution, -1, 0))


def filter_to_spatial(bank: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Inverse-transform a spectral bank, asserting the result is real.

    Raises :class:`circfilt.spectral.ConsistencyError` when a channel's
    imaginary residue exceeds ``tol`` relative to its real magnitude, which
    is the practical symptom of a non-Hermitian spectrum.
    """
    bank = np.asarray(bank, dtype=np.complex128)
    if bank.ndim == 2:
        bank = bank[np.newaxis]
    if bank.ndim != 3:
        raise ValueError(f"bank must have shape (d, m, n), got {bank.shape}")
    return take_real(idft2(bank), tol)


def objective_value(
    samples,
    label,
    bank,
    *,
    lam: float = 1e-2,
    weights=None,
    mode: str = "correlation",
) -> float:
    """Evaluate the ridge objective at a spatial filter bank.

    ``sum_k a_k * ||R(x_k; f) - y||^2 + lam * sum_l ||f^l||^2`` with the
    response in the requested mode and Frobenius norms summed directly.
    """
    check_mode(mode)
    samples, label, weights, lam = _check_problem(samples, label, weights, lam)
    bank = np.asarray(bank, dtype=np.float64)
    if bank.ndim == 2:
        bank = bank[np.newaxis]
    if bank.shape != samples.shape[1:]:
        raise ValueError(f"bank shape {bank.shape} does not match samples {samples.shape[1:]}")
    fhat = dft2(bank)
    xhat = dft2(samples)  # (t, d, m, n)
    if mode == "correlation":
        spectra = (np.conj(xhat) * fhat).sum(axis=1)
    else:
        spectra = (xhat * fhat).sum(axis=1)
    responses = idft2(spectra).real  # (t, m, n)
    data_term = float(weights @ ((responses - label) ** 2).sum(axis=(1, 2)))
    return data_term + lam * float((bank**2).sum())


def mse(response_grid, label) -> float:
    """Sum of squared deviations between a response and the label."""
    r = as_real_grid(response_grid, "response")
    y = as_real_grid(label, "label")
    if r.shape != y.shape:
        raise ValueError(f"shape mismatch: response {r.shape} vs label {y.shape}")
    return float(((r - y) ** 2).sum())
