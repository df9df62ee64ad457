import struct

import numpy as np
import pytest

from circfilt.fileio import (
    FormatError,
    read_bank,
    read_pgm,
    read_sample,
    read_spectral,
    write_pgm,
    write_sample,
    write_spectral,
)


class TestSampleRoundTrip:
    def test_zero_sample(self, tmp_path):
        path = tmp_path / "z.mct"
        sample = np.zeros((3, 4, 4))
        write_sample(sample, path)
        assert np.array_equal(read_sample(path), sample)

    def test_random_sample_bitwise(self, tmp_path, rng):
        path = tmp_path / "r.mct"
        sample = rng.standard_normal((2, 8, 8))
        write_sample(sample, path)
        back = read_sample(path)
        assert back.shape == (2, 8, 8)
        assert np.array_equal(back, sample)

    def test_round_trip_over_shape_sweep(self, tmp_path, rng):
        for d, m, n in [(1, 1, 1), (1, 64, 1), (4, 5, 7), (64, 2, 3), (2, 1, 64)]:
            path = tmp_path / f"s{d}_{m}_{n}.mct"
            sample = rng.standard_normal((d, m, n))
            write_sample(sample, path)
            assert np.array_equal(read_sample(path), sample)

    def test_file_size_is_header_plus_payload(self, tmp_path):
        path = tmp_path / "sz.mct"
        write_sample(np.zeros((1, 2, 2)), path)
        assert path.stat().st_size == 4 + 12 + 1 * 2 * 2 * 8 == 48
        write_sample(np.ones((2, 4, 4)), path)
        assert path.stat().st_size == 4 + 12 + 2 * 4 * 4 * 8 == 272

    def test_writes_are_deterministic(self, tmp_path, rng):
        sample = rng.standard_normal((2, 3, 3))
        p1, p2 = tmp_path / "a.mct", tmp_path / "b.mct"
        write_sample(sample, p1)
        write_sample(sample, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_read_then_write_reproduces_bytes(self, tmp_path, rng):
        p1, p2 = tmp_path / "a.mct", tmp_path / "b.mct"
        write_sample(rng.standard_normal((3, 5, 2)), p1)
        write_sample(read_sample(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_spectral_round_trip(self, tmp_path, rng):
        path = tmp_path / "c.mct"
        bank = rng.standard_normal((2, 4, 6)) + 1j * rng.standard_normal((2, 4, 6))
        write_spectral(bank, path)
        assert np.array_equal(read_spectral(path), bank)
        assert path.stat().st_size == 16 + 2 * 4 * 6 * 16

    def test_read_bank_dispatches_on_magic(self, tmp_path, rng):
        real = rng.standard_normal((1, 3, 3))
        cplx = real + 0.5j * real
        write_sample(real, tmp_path / "r.mct")
        write_spectral(cplx, tmp_path / "c.mct")
        assert read_bank(tmp_path / "r.mct").dtype == np.float64
        assert read_bank(tmp_path / "c.mct").dtype == np.complex128


class TestSampleErrors:
    def _valid_bytes(self):
        return struct.pack("<4sIII", b"MCT1", 1, 2, 2) + np.zeros(4).tobytes()

    def test_bad_magic_at_offset_zero(self, tmp_path):
        path = tmp_path / "bad.mct"
        path.write_bytes(b"XXXX" + self._valid_bytes()[4:])
        with pytest.raises(FormatError) as err:
            read_sample(path)
        assert err.value.offset == 0

    def test_wrong_variant_magic(self, tmp_path):
        path = tmp_path / "c.mct"
        write_spectral(np.ones((1, 2, 2), dtype=complex), path)
        with pytest.raises(FormatError, match="expected magic"):
            read_sample(path)

    def test_truncated_header(self, tmp_path):
        path = tmp_path / "t.mct"
        path.write_bytes(b"MCT1\x01\x00")
        with pytest.raises(FormatError, match="header"):
            read_sample(path)

    def test_zero_dimension(self, tmp_path):
        path = tmp_path / "z.mct"
        path.write_bytes(struct.pack("<4sIII", b"MCT1", 1, 0, 2))
        with pytest.raises(FormatError) as err:
            read_sample(path)
        assert err.value.offset == 8

    def test_dimension_product_overflow(self, tmp_path):
        path = tmp_path / "o.mct"
        path.write_bytes(struct.pack("<4sIII", b"MCT1", 2**16, 2**16, 2**16))
        with pytest.raises(FormatError, match="overflow"):
            read_sample(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "p.mct"
        path.write_bytes(self._valid_bytes()[:-8])
        with pytest.raises(FormatError, match="truncated"):
            read_sample(path)

    def test_trailing_bytes(self, tmp_path):
        path = tmp_path / "x.mct"
        path.write_bytes(self._valid_bytes() + b"\x00")
        with pytest.raises(FormatError, match="trailing"):
            read_sample(path)

    def test_non_finite_value_names_offset(self, tmp_path):
        payload = np.zeros(4)
        payload[2] = np.nan
        path = tmp_path / "n.mct"
        path.write_bytes(struct.pack("<4sIII", b"MCT1", 1, 2, 2) + payload.tobytes())
        with pytest.raises(FormatError) as err:
            read_sample(path)
        assert err.value.offset == 16 + 2 * 8

    def test_write_rejects_non_finite(self, tmp_path):
        with pytest.raises(ValueError, match="non-finite"):
            write_sample(np.full((1, 2, 2), np.inf), tmp_path / "w.mct")


class TestPgm:
    def test_small_image_normalizes_by_maxval(self, tmp_path):
        path = tmp_path / "a.pgm"
        path.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 255, 128, 64]))
        grid = read_pgm(path)
        assert grid.shape == (2, 2)
        assert np.allclose(grid, np.array([[0, 255], [128, 64]]) / 255.0)

    def test_all_zero_image(self, tmp_path):
        path = tmp_path / "z.pgm"
        path.write_bytes(b"P5\n3 2\n255\n" + bytes(6))
        assert np.array_equal(read_pgm(path), np.zeros((2, 3)))

    def test_sixteen_bit_big_endian(self, tmp_path):
        path = tmp_path / "w.pgm"
        raster = struct.pack(">4H", 0, 65535, 32768, 1)
        path.write_bytes(b"P5\n2 2\n65535\n" + raster)
        grid = read_pgm(path)
        assert grid[0, 1] == 1.0
        assert grid[1, 0] == pytest.approx(32768 / 65535)

    def test_values_stay_in_unit_interval(self, tmp_path, rng):
        path = tmp_path / "r.pgm"
        write_pgm(rng.random((5, 4)), path, maxval=255)
        grid = read_pgm(path)
        assert grid.min() >= 0.0 and grid.max() <= 1.0

    def test_comments_in_header(self, tmp_path):
        path = tmp_path / "c.pgm"
        path.write_bytes(b"P5\n# a comment\n2 1\n255\n" + bytes([7, 9]))
        assert np.allclose(read_pgm(path), np.array([[7, 9]]) / 255.0)

    def test_round_trip_within_quantization(self, tmp_path, rng):
        g = rng.random((6, 5))
        path = tmp_path / "q.pgm"
        write_pgm(g, path, maxval=65535)
        assert np.abs(read_pgm(path) - g).max() <= 0.5 / 65535 + 1e-12

    def test_rejects_wrong_magic(self, tmp_path):
        path = tmp_path / "b.pgm"
        path.write_bytes(b"P2\n2 2\n255\n" + bytes(4))
        with pytest.raises(FormatError, match="not a binary PGM"):
            read_pgm(path)

    def test_rejects_zero_maxval(self, tmp_path):
        path = tmp_path / "m.pgm"
        path.write_bytes(b"P5\n2 2\n0\n" + bytes(4))
        with pytest.raises(FormatError, match="maxval"):
            read_pgm(path)

    def test_rejects_truncated_raster(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P5\n2 2\n255\n" + bytes(3))
        with pytest.raises(FormatError, match="truncated"):
            read_pgm(path)
