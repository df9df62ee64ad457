"""Synthetic frame generation for demos and tracker tests."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .fileio import write_pgm

__all__ = ["blob_frame", "blob_sequence", "write_sequence"]


def blob_frame(
    shape: tuple[int, int],
    center: tuple[float, float],
    blob_sigma: float = 3.0,
    noise: float = 0.0,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """One frame holding a Gaussian blob at ``center = (cx, cy)``, values in [0, 1]."""
    h, w = shape
    cx, cy = center
    cols = np.arange(w) - cx
    rows = np.arange(h) - cy
    frame = np.exp(-(rows[:, np.newaxis] ** 2 + cols[np.newaxis, :] ** 2) / (2.0 * blob_sigma**2))
    if noise > 0:
        if rng is None:
            rng = np.random.default_rng(0)
        frame = frame + noise * rng.standard_normal(frame.shape)
    return np.clip(frame, 0.0, 1.0)


def blob_sequence(
    n_frames: int,
    shape: tuple[int, int] = (64, 64),
    start: tuple[float, float] = (8.0, 32.0),
    velocity: tuple[float, float] = (1.0, 0.0),
    blob_sigma: float = 3.0,
    noise: float = 0.01,
    seed: int = 0,
) -> tuple[list[np.ndarray], list[tuple[float, float]]]:
    """A blob translating at constant velocity; returns frames and true centers."""
    rng = np.random.default_rng(seed)
    frames = []
    centers = []
    cx, cy = start
    vx, vy = velocity
    for k in range(n_frames):
        center = (cx + k * vx, cy + k * vy)
        frames.append(blob_frame(shape, center, blob_sigma=blob_sigma, noise=noise, rng=rng))
        centers.append(center)
    return frames, centers


def write_sequence(frames, directory, maxval: int = 65535) -> list[Path]:
    """Write frames as zero-padded ``frame_000.pgm`` files; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, frame in enumerate(frames):
        path = directory / f"frame_{k:03d}.pgm"
        write_pgm(frame, path, maxval=maxval)
        paths.append(path)
    return paths
