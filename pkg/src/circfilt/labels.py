"""Ideal-response labels: centrosymmetric Gaussians peaked at the origin.

The label is parameterized by the circular distance to the origin,
``delta_m(i) = min(i, m - i)``, which makes ``y == flip(y)`` hold bitwise for
every bandwidth and grid shape, and in consequence keeps the label spectrum
real up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import as_real_grid, flip
from .spectral import dft2

__all__ = ["default_sigma", "gaussian_label", "LabelReport", "validate_label"]


def default_sigma(m: int, n: int) -> float:
    """Bandwidth rule of thumb scaling with grid area: ``sqrt(m*n) / 16``."""
    return float(np.sqrt(m * n) / 16.0)


def gaussian_label(m: int, n: int, sigma: float) -> np.ndarray:
    """Gaussian response target on the torus, peak value 1 at ``(0, 0)``.

    ``y[i, j] = exp(-(delta_m(i)**2 + delta_n(j)**2) / (2 * sigma**2))``
    """
    if m < 1 or n < 1:
        raise ValueError(f"grid shape must be positive, got {(m, n)}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    di = np.minimum(np.arange(m), m - np.arange(m)).astype(np.float64)
    dj = np.minimum(np.arange(n), n - np.arange(n)).astype(np.float64)
    return np.exp(-(di[:, np.newaxis] ** 2 + dj[np.newaxis, :] ** 2) / (2.0 * sigma**2))


@dataclass(frozen=True)
class LabelReport:
    """Spectral diagnostics of a label grid."""

    flip_residue: float  # max |y - flip(y)|
    spectrum_imag_residue: float  # max |imag(dft2(y))|
    spectrum_min: float  # min real(dft2(y))
    centrosymmetric: bool
    passed: bool


def validate_label(y, tol: float = 1e-9) -> LabelReport:
    """Check the properties the solver equivalence rests on.

    Passes iff the label is centrosymmetric and its spectrum is real, both
    within ``tol``.  ``spectrum_min`` is reported for inspection only;
    realness, not positivity, is what the solver equivalence needs.
    """
    y = as_real_grid(y, "label")
    flip_residue = float(np.abs(y - flip(y)).max())
    yhat = dft2(y)
    imag_residue = float(np.abs(yhat.imag).max())
    centro = flip_residue <= tol
    return LabelReport(
        flip_residue=flip_residue,
        spectrum_imag_residue=imag_residue,
        spectrum_min=float(yhat.real.min()),
        centrosymmetric=centro,
        passed=centro and imag_residue <= tol,
    )
