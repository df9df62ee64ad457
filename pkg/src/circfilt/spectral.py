"""2-D DFT conventions and the circular correlation/convolution operators.

The forward transform is unnormalized and the inverse carries the
``1 / (m*n)`` factor, so a unit impulse has an all-ones spectrum and
Parseval's identity reads ``sum(g**2) == sum(|dft2(g)|**2) / (m*n)``.

Both operators act on equal-shape grids with all indices mod ``(m, n)``::

    circ_correlate(x, f)[u, v] = sum_{i,j} x[i, j] * f[i + u, j + v]
    circ_convolve(x, f)[u, v]  = sum_{i,j} x[i, j] * f[u - i, v - j]

whose spectra are ``conj(dft2(x)) * dft2(f)`` and ``dft2(x) * dft2(f)``
respectively.  The two are linked through the origin flip:
``circ_convolve(x, f) == flip(circ_correlate(x, flip(f)))``.
"""

from __future__ import annotations

import numpy as np

from .grids import as_real_grid, as_sample

__all__ = [
    "MODES",
    "ConsistencyError",
    "check_mode",
    "dft2",
    "idft2",
    "take_real",
    "circ_correlate",
    "circ_convolve",
    "response",
]

MODES = ("correlation", "convolution")


class ConsistencyError(ValueError):
    """A quantity that must be numerically real carries too much imaginary mass."""

    def __init__(self, residue: float, tol: float):
        self.residue = float(residue)
        self.tol = float(tol)
        super().__init__(
            f"imaginary residue {self.residue:.3e} exceeds tolerance {self.tol:.3e}"
        )


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def dft2(g: np.ndarray) -> np.ndarray:
    """Unnormalized 2-D DFT over the last two axes."""
    return np.fft.fft2(np.asarray(g))


def idft2(G: np.ndarray) -> np.ndarray:
    """Inverse 2-D DFT over the last two axes, scaled by ``1 / (m*n)``."""
    return np.fft.ifft2(np.asarray(G))


def take_real(G: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Strip an imaginary part that is pure roundoff.

    Accepts the array when ``max |imag| <= tol * (1 + max |real|)`` and
    returns the real part; otherwise raises :class:`ConsistencyError`
    carrying the offending residue.
    """
    G = np.asarray(G)
    if not np.iscomplexobj(G):
        return np.asarray(G, dtype=np.float64)
    if G.size == 0:
        raise ValueError("take_real needs a non-empty array")
    residue = float(np.abs(G.imag).max())
    if residue > tol * (1.0 + float(np.abs(G.real).max())):
        raise ConsistencyError(residue, tol)
    return np.ascontiguousarray(G.real, dtype=np.float64)


def _check_pair(x, f):
    x = as_real_grid(x, "x")
    f = as_real_grid(f, "f")
    if x.shape != f.shape:
        raise ValueError(f"shape mismatch: x {x.shape} vs f {f.shape}")
    return x, f


def circ_correlate(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Circular correlation of two equal-shape real grids.

    Computed spectrally as ``idft2(conj(dft2(x)) * dft2(f))``; the result of
    real inputs is real up to roundoff, which is discarded.
    """
    x, f = _check_pair(x, f)
    return idft2(np.conj(dft2(x)) * dft2(f)).real


def circ_convolve(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Circular convolution of two equal-shape real grids."""
    x, f = _check_pair(x, f)
    return idft2(dft2(x) * dft2(f)).real


def response(sample: np.ndarray, bank: np.ndarray, mode: str = "correlation") -> np.ndarray:
    """Filter response: per-channel circular correlation or convolution, summed.

    Parameters
    ----------
    sample : (d, m, n) real array
        Detection or training sample.
    bank : (d, m, n) array
        Filter bank.  A real bank is transformed on the fly; a complex bank
        is taken to already hold the channel spectra.
    mode : {"correlation", "convolution"}

    Returns
    -------
    (m, n) float64 response grid.
    """
    check_mode(mode)
    sample = as_sample(sample, "sample")
    bank = np.asarray(bank)
    if bank.ndim == 2:
        bank = bank[np.newaxis]
    if bank.shape != sample.shape:
        raise ValueError(f"shape mismatch: sample {sample.shape} vs bank {bank.shape}")
    fhat = bank if np.iscomplexobj(bank) else dft2(bank)
    xhat = dft2(sample)
    if mode == "correlation":
        spectrum = (np.conj(xhat) * fhat).sum(axis=0)
    else:
        spectrum = (xhat * fhat).sum(axis=0)
    return idft2(spectrum).real
