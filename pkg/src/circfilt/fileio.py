"""Bit-exact binary file formats for samples, filters, labels and frames.

Tensor container (magic ``MCT1`` real, ``MCTC`` complex)::

    bytes  0..3    magic
    bytes  4..15   d, m, n as unsigned 32-bit little-endian integers
    bytes 16..     d*m*n IEEE float64 little-endian values, channel-major,
                   row-major within each channel; the complex variant stores
                   a (real, imag) pair per value

Frames are binary PGM (``P5``) with ``maxval <= 65535``; pixel ``p`` maps to
``p / maxval`` in [0, 1].  Two-byte PGM samples are big-endian per the format.
"""

from __future__ import annotations

import struct

import numpy as np

from .grids import as_real_grid

__all__ = [
    "FormatError",
    "MAGIC_REAL",
    "MAGIC_COMPLEX",
    "read_sample",
    "write_sample",
    "read_spectral",
    "write_spectral",
    "read_bank",
    "read_pgm",
    "write_pgm",
]

MAGIC_REAL = b"MCT1"
MAGIC_COMPLEX = b"MCTC"

_HEADER = struct.Struct("<4sIII")
# Allocation guard: u32 dims can multiply far past anything this library
# should ever map into memory.
_MAX_ELEMENTS = 1 << 28


class FormatError(ValueError):
    """Malformed file contents; ``offset`` is the first offending byte."""

    def __init__(self, path, offset: int, reason: str):
        self.path = str(path)
        self.offset = int(offset)
        self.reason = reason
        super().__init__(f"{self.path}: byte {self.offset}: {reason}")


def _read_header(data: bytes, path, expect_magic: bytes | None):
    if len(data) < 4:
        raise FormatError(path, len(data), "file truncated before magic")
    magic = data[:4]
    if magic not in (MAGIC_REAL, MAGIC_COMPLEX):
        raise FormatError(path, 0, f"bad magic {magic!r}")
    if expect_magic is not None and magic != expect_magic:
        raise FormatError(path, 0, f"expected magic {expect_magic!r}, got {magic!r}")
    if len(data) < _HEADER.size:
        raise FormatError(path, len(data), "file truncated inside header")
    _, d, m, n = _HEADER.unpack_from(data)
    for off, name, value in ((4, "d", d), (8, "m", m), (12, "n", n)):
        if value == 0:
            raise FormatError(path, off, f"dimension {name} is zero")
    if d * m * n > _MAX_ELEMENTS:
        raise FormatError(path, 4, f"dimension product {d}*{m}*{n} overflows the element limit")
    return magic, d, m, n


def _read_payload(data: bytes, path, d: int, m: int, n: int, complex_values: bool):
    count = d * m * n * (2 if complex_values else 1)
    nbytes = count * 8
    if len(data) - _HEADER.size < nbytes:
        raise FormatError(
            path, len(data), f"payload truncated: expected {nbytes} bytes after header"
        )
    if len(data) - _HEADER.size > nbytes:
        raise FormatError(path, _HEADER.size + nbytes, "trailing bytes after payload")
    flat = np.frombuffer(data, dtype="<f8", count=count, offset=_HEADER.size)
    bad = np.flatnonzero(~np.isfinite(flat))
    if bad.size:
        raise FormatError(path, _HEADER.size + int(bad[0]) * 8, "non-finite value in payload")
    if complex_values:
        values = flat[0::2] + 1j * flat[1::2]
        return values.reshape(d, m, n)
    return flat.astype(np.float64).reshape(d, m, n)


def read_sample(path) -> np.ndarray:
    """Read an ``MCT1`` file into a ``(d, m, n)`` float64 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    _, d, m, n = _read_header(data, path, MAGIC_REAL)
    return _read_payload(data, path, d, m, n, complex_values=False)


def write_sample(sample, path) -> None:
    """Write a real ``(d, m, n)`` array (or a bare grid) as ``MCT1``."""
    s = np.asarray(sample, dtype=np.float64)
    if s.ndim == 2:
        s = s[np.newaxis]
    if s.ndim != 3 or min(s.shape) < 1:
        raise ValueError(f"sample must have shape (d, m, n), got {s.shape}")
    if not np.isfinite(s).all():
        raise ValueError("refusing to write non-finite values")
    d, m, n = s.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC_REAL, d, m, n))
        fh.write(np.ascontiguousarray(s, dtype="<f8").tobytes())


def read_spectral(path) -> np.ndarray:
    """Read an ``MCTC`` file into a ``(d, m, n)`` complex128 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    _, d, m, n = _read_header(data, path, MAGIC_COMPLEX)
    return _read_payload(data, path, d, m, n, complex_values=True)


def write_spectral(bank, path) -> None:
    """Write a complex ``(d, m, n)`` array as ``MCTC``."""
    b = np.asarray(bank, dtype=np.complex128)
    if b.ndim == 2:
        b = b[np.newaxis]
    if b.ndim != 3 or min(b.shape) < 1:
        raise ValueError(f"bank must have shape (d, m, n), got {b.shape}")
    if not (np.isfinite(b.real).all() and np.isfinite(b.imag).all()):
        raise ValueError("refusing to write non-finite values")
    d, m, n = b.shape
    interleaved = np.empty((d, m, n, 2), dtype="<f8")
    interleaved[..., 0] = b.real
    interleaved[..., 1] = b.imag
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC_COMPLEX, d, m, n))
        fh.write(interleaved.tobytes())


def read_bank(path) -> np.ndarray:
    """Read either container; real ``MCT1`` -> float64, ``MCTC`` -> complex128."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, d, m, n = _read_header(data, path, None)
    return _read_payload(data, path, d, m, n, complex_values=magic == MAGIC_COMPLEX)


def _pgm_tokens(data: bytes, path):
    """Yield (offset, token) over the PGM header, skipping comments."""
    pos = 0
    while pos < len(data):
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos : pos + 1].isspace():
                pos += 1
            yield start, data[start:pos]
            # exactly one whitespace byte separates maxval from the raster,
            # so the caller needs the position just past this token
            yield pos, None


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM frame into an ``(m, n)`` float64 grid in [0, 1]."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = _pgm_tokens(data, path)
    fields = []
    end = 0
    try:
        for _ in range(4):
            offset, token = next(tokens)
            end, _ = next(tokens)
            fields.append((offset, token))
    except StopIteration:
        raise FormatError(path, len(data), "truncated PGM header") from None
    (magic_off, magic), (_, width_tok), (_, height_tok), (maxval_off, maxval_tok) = fields
    if magic != b"P5":
        raise FormatError(path, magic_off, f"not a binary PGM (magic {magic!r})")
    try:
        width, height, maxval = int(width_tok), int(height_tok), int(maxval_tok)
    except ValueError:
        raise FormatError(path, magic_off, "non-numeric PGM header field") from None
    if width < 1 or height < 1:
        raise FormatError(path, magic_off, "PGM dimensions must be positive")
    if maxval < 1 or maxval > 65535:
        raise FormatError(path, maxval_off, f"PGM maxval {maxval} out of range 1..65535")
    raster_off = end + 1
    dtype = ">u2" if maxval > 255 else "u1"
    count = width * height
    nbytes = count * (2 if maxval > 255 else 1)
    if len(data) - raster_off < nbytes:
        raise FormatError(path, len(data), f"PGM raster truncated: expected {nbytes} bytes")
    raw = np.frombuffer(data, dtype=dtype, count=count, offset=raster_off)
    return raw.reshape(height, width).astype(np.float64) / maxval


def write_pgm(grid, path, maxval: int = 255) -> None:
    """Write an ``(m, n)`` grid of values in [0, 1] as binary PGM.

    Values are clipped to [0, 1] and rounded to the nearest of ``maxval + 1``
    levels.
    """
    g = as_real_grid(grid, "frame")
    if not 1 <= maxval <= 65535:
        raise ValueError(f"maxval {maxval} out of range 1..65535")
    levels = np.rint(np.clip(g, 0.0, 1.0) * maxval)
    dtype = ">u2" if maxval > 255 else "u1"
    m, n = g.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{n} {m}\n{maxval}\n".encode("ascii"))
        fh.write(levels.astype(dtype).tobytes())
