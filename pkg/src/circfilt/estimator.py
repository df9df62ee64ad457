"""Scikit-learn style front end over the closed-form filter solvers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .grids import as_real_grid, as_sample, as_sample_batch
from .labels import default_sigma, gaussian_label
from .solver import filter_to_spatial, mse, solve_filter
from .spectral import check_mode, response

__all__ = ["CirculantRidge"]


class CirculantRidge(BaseEstimator):
    """Ridge-regressed filter bank under circular correlation or convolution.

    Learns one filter channel per sample channel so that the summed
    channel-wise circular correlation (or convolution) of a training sample
    with the filter reproduces a target response grid.  The closed-form
    solve runs per frequency bin, so fitting costs a handful of FFTs plus
    ``m*n`` small Hermitian solves.

    Parameters
    ----------
    mode : {"correlation", "convolution"}
        Which circular operator the filter is trained (and applied) under.
    lam : float
        Ridge weight; must be positive.
    sigma : float or None
        Bandwidth of the default Gaussian target used when ``fit`` is not
        given an explicit ``y``; None applies ``sqrt(m*n) / 16``.

    Attributes
    ----------
    filter_spectral_ : (d, m, n) complex128
    filter_spatial_ : (d, m, n) float64
    label_ : (m, n) float64
    n_channels_ : int
    grid_shape_ : (m, n)

    Examples
    --------
    >>> import numpy as np
    >>> from circfilt import CirculantRidge
    >>> X = np.random.default_rng(0).standard_normal((4, 2, 8, 8))
    >>> model = CirculantRidge(mode="correlation", lam=1e-2).fit(X)
    >>> model.predict(X).shape
    (4, 8, 8)
    """

    def __init__(self, mode: str = "correlation", lam: float = 1e-2, sigma: float | None = None):
        self.mode = mode
        self.lam = lam
        self.sigma = sigma

    def fit(self, X, y=None, sample_weight=None):
        """Learn the filter bank from samples ``X`` of shape ``(t, d, m, n)``.

        ``y`` is the ``(m, n)`` target response grid; omitted, a
        centrosymmetric Gaussian peaked at the origin is generated.
        ``sample_weight`` carries the per-sample weights (uniform when None).
        """
        check_mode(self.mode)
        X = as_sample_batch(X, "X")
        m, n = X.shape[2:]
        if y is None:
            sigma = self.sigma if self.sigma is not None else default_sigma(m, n)
            y = gaussian_label(m, n, sigma)
        y = as_real_grid(y, "y")
        self.filter_spectral_ = solve_filter(
            X, y, lam=self.lam, weights=sample_weight, mode=self.mode
        )
        self.filter_spatial_ = filter_to_spatial(self.filter_spectral_)
        self.label_ = y
        self.n_channels_ = X.shape[1]
        self.grid_shape_ = (m, n)
        return self

    def predict(self, X) -> np.ndarray:
        """Response grids ``(k, m, n)`` for samples ``X`` of shape ``(k, d, m, n)``."""
        self._check_fitted()
        X = as_sample_batch(X, "X")
        if X.shape[1:] != (self.n_channels_, *self.grid_shape_):
            raise ValueError(
                f"X sample shape {X.shape[1:]} does not match fitted "
                f"{(self.n_channels_, *self.grid_shape_)}"
            )
        return np.stack([response(x, self.filter_spectral_, self.mode) for x in X])

    def respond(self, x) -> np.ndarray:
        """Response grid of a single ``(d, m, n)`` sample."""
        self._check_fitted()
        x = as_sample(x, "x")
        if x.shape != (self.n_channels_, *self.grid_shape_):
            raise ValueError(
                f"sample shape {x.shape} does not match fitted "
                f"{(self.n_channels_, *self.grid_shape_)}"
            )
        return response(x, self.filter_spectral_, self.mode)

    def score(self, X, y=None) -> float:
        """Negative mean response MSE against the fitted label (higher is better)."""
        self._check_fitted()
        target = self.label_ if y is None else as_real_grid(y, "y")
        responses = self.predict(X)
        return -float(np.mean([mse(r, target) for r in responses]))

    def _check_fitted(self):
        if not hasattr(self, "filter_spectral_"):
            raise RuntimeError("this CirculantRidge instance is not fitted yet")
