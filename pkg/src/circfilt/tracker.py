"""Minimal single-scale online tracker driving the circular filter solvers.

The model keeps exponentially weighted running statistics of the per-bin
normal equations: a d-by-d Gram accumulator and a d-vector numerator per
frequency bin, equivalent to geometric sample weights
``a_k = eta * (1 - eta)^(t - k)`` (the first sample keeps the remaining
mass).  Each step solves the filter from the current statistics, detects at
the previous position, moves the box to the decoded response peak, then
folds the patch at the new position into the statistics.

Peak decoding: the response of a sample whose content moved by ``+delta``
peaks at ``-delta`` under circular correlation and at ``+delta`` under
circular convolution (the origin-flip symmetry of the two formulations), so
the decoded motion negates the wrapped peak offset in correlation mode and
keeps it in convolution mode.  Both modes therefore report identical boxes
on identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import as_real_grid, wrap_offset
from .labels import default_sigma, gaussian_label
from .spectral import check_mode, dft2, idft2

__all__ = ["TrackerConfig", "TrackState", "TrackingLostError", "extract_features", "Tracker"]


class TrackingLostError(RuntimeError):
    """The search patch no longer intersects the frame."""


@dataclass(frozen=True)
class TrackerConfig:
    mode: str = "correlation"
    patch_scale: float = 2.0  # search patch size relative to the target box
    lam: float = 1e-2
    eta: float = 0.025  # learning rate of the exponential model update
    sigma: float | None = None  # label bandwidth; None -> sqrt(m*n)/16 on the model grid
    gradients: bool = True  # append central-difference gradient channels
    window: bool = True  # Hann-taper every channel
    model_size: tuple[int, int] = (64, 64)  # (rows, cols) all patches resample to

    def validate(self) -> "TrackerConfig":
        check_mode(self.mode)
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {self.eta}")
        if self.patch_scale < 1.0:
            raise ValueError(f"patch_scale must be >= 1, got {self.patch_scale}")
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if min(self.model_size) < 2:
            raise ValueError(f"model_size too small: {self.model_size}")
        return self


@dataclass
class TrackState:
    gram: np.ndarray  # (M, N, d, d) complex, Hermitian per bin
    numerator: np.ndarray  # (M, N, d) complex
    label_spectrum: np.ndarray  # (M, N) complex
    center: tuple[float, float]  # (cx, cy) in frame pixels
    box_size: tuple[int, int]  # (w, h)
    patch_size: tuple[int, int]  # (pw, ph), fixed over the run
    frame_index: int


def _patch_rows_cols(frame_shape, center, patch_size, model_size):
    """Nearest-neighbour source indices of the model grid, replicate-padded."""
    h, w = frame_shape
    cx, cy = center
    pw, ph = patch_size
    mrows, mcols = model_size
    if cy + ph / 2.0 <= 0 or cy - ph / 2.0 >= h or cx + pw / 2.0 <= 0 or cx - pw / 2.0 >= w:
        raise TrackingLostError(f"patch centered at ({cx:.1f}, {cy:.1f}) left the frame")
    rows = np.floor(cy - ph / 2.0 + (np.arange(mrows) + 0.5) * ph / mrows).astype(int)
    cols = np.floor(cx - pw / 2.0 + (np.arange(mcols) + 0.5) * pw / mcols).astype(int)
    return np.clip(rows, 0, h - 1), np.clip(cols, 0, w - 1)


def extract_features(frame, center, box_size, config: TrackerConfig) -> np.ndarray:
    """Crop, resample and featurize a search patch.

    Crops ``box_size * patch_scale`` around ``center`` with replicate
    padding, resamples to the model grid by nearest neighbour, mean-subtracts
    the grayscale channel, optionally appends central-difference gradient
    channels, and tapers every channel with a Hann window.
    """
    frame = as_real_grid(frame, "frame")
    w, h = box_size
    patch = (max(1, round(w * config.patch_scale)), max(1, round(h * config.patch_scale)))
    rows, cols = _patch_rows_cols(frame.shape, center, patch, config.model_size)
    gray = frame[np.ix_(rows, cols)]
    gray = gray - gray.mean()
    channels = [gray]
    if config.gradients:
        gy, gx = np.gradient(gray)
        channels += [gx, gy]
    feats = np.stack(channels)
    if config.window:
        mrows, mcols = config.model_size
        feats = feats * np.outer(np.hanning(mrows), np.hanning(mcols))
    return feats


class Tracker:
    """Online tracker; one instance owns one sequence's state."""

    def __init__(self, config: TrackerConfig | None = None):
        self.config = (config or TrackerConfig()).validate()
        self.state: TrackState | None = None
        self.last_response: np.ndarray | None = None

    def init(self, frame, box) -> tuple[tuple[float, float, float, float], float]:
        """Start tracking from ``box = (x, y, w, h)`` on the first frame.

        Returns the box and the self-detection score of the freshly learned
        single-sample filter.
        """
        frame = as_real_grid(frame, "frame")
        x, y, w, h = (float(v) for v in box)
        if w < 4 or h < 4:
            raise ValueError(f"box {box} is degenerate: sides must be >= 4 px")
        fh, fw = frame.shape
        if x < 0 or y < 0 or x + w > fw or y + h > fh:
            raise ValueError(f"box {box} does not lie inside the {fw}x{fh} frame")
        cfg = self.config
        center = (x + w / 2.0, y + h / 2.0)
        box_size = (int(round(w)), int(round(h)))
        patch = (
            max(1, round(box_size[0] * cfg.patch_scale)),
            max(1, round(box_size[1] * cfg.patch_scale)),
        )
        mrows, mcols = cfg.model_size
        sigma = cfg.sigma if cfg.sigma is not None else default_sigma(mrows, mcols)
        label_spectrum = dft2(gaussian_label(mrows, mcols, sigma))
        feats = extract_features(frame, center, box_size, cfg)
        gram, numerator = self._statistics(feats, label_spectrum)
        self.state = TrackState(
            gram=gram,
            numerator=numerator,
            label_spectrum=label_spectrum,
            center=center,
            box_size=box_size,
            patch_size=patch,
            frame_index=0,
        )
        resp = self._respond(dft2(feats))
        self.last_response = resp
        return self._box(), float(resp.max())

    def step(self, frame) -> tuple[tuple[float, float, float, float], float]:
        """Process the next frame: detect, move the box, update the model."""
        state = self._require_state()
        frame = as_real_grid(frame, "frame")
        cfg = self.config
        feats = extract_features(frame, state.center, state.box_size, cfg)
        resp = self._respond(dft2(feats))
        self.last_response = resp
        peak = np.unravel_index(int(resp.argmax()), resp.shape)
        score = float(resp[peak])
        mrows, mcols = cfg.model_size
        dy_bins = wrap_offset(int(peak[0]), mrows)
        dx_bins = wrap_offset(int(peak[1]), mcols)
        sign = -1.0 if cfg.mode == "correlation" else 1.0
        pw, ph = state.patch_size
        cx = state.center[0] + sign * dx_bins * (pw / mcols)
        cy = state.center[1] + sign * dy_bins * (ph / mrows)
        state.center = (cx, cy)
        feats_new = extract_features(frame, state.center, state.box_size, cfg)
        gram_new, numerator_new = self._statistics(dft2(feats_new), state.label_spectrum, spectra=True)
        eta = cfg.eta
        state.gram = (1.0 - eta) * state.gram + eta * gram_new
        state.numerator = (1.0 - eta) * state.numerator + eta * numerator_new
        state.frame_index += 1
        return self._box(), score

    def current_filter(self) -> np.ndarray:
        """Spectral filter bank solved from the accumulated statistics."""
        state = self._require_state()
        d = state.numerator.shape[-1]
        A = state.gram.copy()
        A[..., np.arange(d), np.arange(d)] += self.config.lam
        solution = np.linalg.solve(A, state.numerator[..., np.newaxis])[..., 0]
        return np.ascontiguousarray(np.moveaxis(solution, -1, 0))

    # -- internals --------------------------------------------------------

    def _statistics(self, feats, label_spectrum, spectra: bool = False):
        """Per-bin Gram matrix and numerator of one sample, mode-oriented."""
        v = feats if spectra else dft2(feats)
        w = np.conj(v) if self.config.mode == "correlation" else v
        gram = np.einsum("ipq,jpq->pqij", np.conj(w), w)
        numerator = np.einsum("ipq,pq->pqi", np.conj(w), label_spectrum)
        return gram, numerator

    def _respond(self, sample_spectra) -> np.ndarray:
        fhat = self.current_filter()
        if self.config.mode == "correlation":
            spectrum = (np.conj(sample_spectra) * fhat).sum(axis=0)
        else:
            spectrum = (sample_spectra * fhat).sum(axis=0)
        return idft2(spectrum).real

    def _require_state(self) -> TrackState:
        if self.state is None:
            raise RuntimeError("tracker is not initialized; call init() first")
        return self.state

    def _box(self) -> tuple[float, float, float, float]:
        state = self._require_state()
        w, h = state.box_size
        return (state.center[0] - w / 2.0, state.center[1] - h / 2.0, float(w), float(h))
