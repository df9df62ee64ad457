import numpy as np
import pytest

from circfilt.equivalence import (
    InstanceSpec,
    Tolerances,
    check_conjugation,
    check_flip_symmetry,
    check_mse_equality,
    check_peak_mirror,
    conjugation_residue,
    evaluate_instance,
    flip_symmetry_residue,
    make_instance,
    mse_pair,
    peak_mirror,
    run_suite,
    sweep_instances,
)
from circfilt.grids import flip
from circfilt.labels import gaussian_label


def symmetric(x):
    return (x + flip(x)) / 2.0


class TestConjugation:
    def test_centrosymmetric_samples_collapse_the_modes(self, rng):
        # real spectra make correlation and convolution literally identical
        samples = symmetric(rng.standard_normal((2, 2, 8, 8)))
        label = gaussian_label(8, 8, 1.0)
        assert conjugation_residue(samples, label, lam=1e-2) < 1e-10

    def test_seeded_random_instance(self):
        spec = InstanceSpec(m=8, n=8, d=2, t=3, seed=42, lam=0.01)
        assert check_conjugation(spec) < 1e-9

    def test_negative_control_blows_up(self):
        spec = InstanceSpec(m=8, n=8, d=2, t=3, seed=42, lam=0.01, label_shift=(1, 0))
        assert check_conjugation(spec) > 1e-3


class TestFlipSymmetry:
    def test_centrosymmetric_instance_fixes_both_responses(self, rng):
        samples = symmetric(rng.standard_normal((2, 2, 8, 8)))
        detection = symmetric(rng.standard_normal((2, 8, 8)))
        label = gaussian_label(8, 8, 1.0)
        assert flip_symmetry_residue(samples, detection, label, lam=1e-2) < 1e-10

    def test_seeded_random_instance(self):
        spec = InstanceSpec(m=8, n=8, d=2, t=3, seed=7, lam=0.01)
        assert check_flip_symmetry(spec) < 1e-9

    def test_zero_detection_sample(self, rng):
        samples = rng.standard_normal((2, 2, 8, 8))
        label = gaussian_label(8, 8, 1.0)
        residue = flip_symmetry_residue(samples, np.zeros((2, 8, 8)), label, lam=1e-2)
        assert residue == 0.0


class TestMseEquality:
    def test_zero_detection_sample_gives_label_mass(self, rng):
        samples = rng.standard_normal((2, 1, 8, 8))
        label = gaussian_label(8, 8, 1.0)
        mse_corr, mse_conv = mse_pair(samples, np.zeros((1, 8, 8)), label, lam=1e-2)
        assert mse_corr == pytest.approx(float((label**2).sum()))
        assert mse_corr == mse_conv

    def test_seeded_random_instance(self):
        spec = InstanceSpec(m=8, n=8, d=3, t=2, seed=5, lam=0.01)
        assert check_mse_equality(spec) < 1e-10

    def test_shape_mix_sweep(self):
        worst = 0.0
        for i, spec in enumerate(sweep_instances("small", seed=100)):
            worst = max(worst, check_mse_equality(spec))
        assert worst < 1e-9


class TestPeakMirror:
    def test_self_detection_peaks_at_origin(self, rng):
        sample = rng.standard_normal((1, 2, 8, 8))
        label = gaussian_label(8, 8, 1.0)
        result = peak_mirror(sample, sample[0], label, lam=1e-2)
        assert result.peak_corr == (0, 0)
        assert result.peak_conv == (0, 0)
        assert result.mirrored is True
        assert result.distance_corr == 0.0 == result.distance_conv

    def test_shifted_detection_gives_mirror_bins(self, rng):
        sample = rng.standard_normal((1, 1, 8, 8))
        label = gaussian_label(8, 8, 1.0)
        detection = np.roll(sample[0], (2, 1), axis=(1, 2))
        result = peak_mirror(sample, detection, label, lam=1e-2)
        assert result.mirrored is True
        assert sorted([result.peak_corr, result.peak_conv]) == [(2, 1), (6, 7)]
        assert result.distance_corr == pytest.approx(np.sqrt(5.0))
        assert result.distance_conv == pytest.approx(np.sqrt(5.0))

    def test_flat_response_is_inconclusive(self, rng):
        samples = rng.standard_normal((1, 1, 8, 8))
        label = gaussian_label(8, 8, 1.0)
        result = peak_mirror(samples, np.zeros((1, 8, 8)), label, lam=1e-2)
        assert result.mirrored is None

    def test_spec_level_wrapper(self):
        result = check_peak_mirror(InstanceSpec(m=8, n=8, d=1, t=2, seed=3, lam=0.01))
        assert result.mirrored is not False


class TestInstances:
    def test_seed_determines_instance(self):
        spec = InstanceSpec(m=4, n=6, d=2, t=3, seed=9)
        a = make_instance(spec)
        b = make_instance(spec)
        assert np.array_equal(a.samples, b.samples)
        assert np.array_equal(a.detection, b.detection)
        assert np.array_equal(a.label, b.label)

    def test_default_sigma_follows_min_side(self):
        assert InstanceSpec(m=8, n=16).resolved_sigma() == 1.0
        assert InstanceSpec(m=8, n=16, sigma=2.5).resolved_sigma() == 2.5

    def test_degenerate_specs_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            make_instance(InstanceSpec(m=1, n=4))


class TestSuite:
    def test_small_sweep_passes_with_default_tolerances(self):
        result = run_suite(sweep_instances("small", seed=0))
        assert result.passed
        assert result.worst_conj < 1e-9
        assert result.worst_flip < 1e-9
        assert result.worst_mse_gap < 1e-10

    def test_negative_control_fails_exactly_that_entry(self):
        specs = sweep_instances("small", seed=0)[:5]
        specs.insert(2, InstanceSpec(m=8, n=8, d=2, t=2, seed=1, lam=0.01, label_shift=(1, 0)))
        result = run_suite(specs)
        assert not result.passed
        flags = [r.passed for r in result.reports]
        assert flags == [True, True, False, True, True, True]

    def test_default_tolerances_applied(self):
        result = run_suite([InstanceSpec(m=4, n=4, seed=0)])
        assert result.tolerances == Tolerances(conj=1e-9, flip=1e-9, mse=1e-10)

    def test_report_serializes_to_plain_json_types(self):
        import json

        result = run_suite([InstanceSpec(m=4, n=4, seed=0)])
        text = json.dumps(result.to_dict())
        payload = json.loads(text)
        assert payload["passed"] is True
        assert payload["instances"][0]["instance"]["sigma"] == 0.5

    def test_empty_suite_rejected(self):
        with pytest.raises(ValueError):
            run_suite([])

    def test_sweep_sizes_and_determinism(self):
        full = sweep_instances("full", seed=0)
        small = sweep_instances("small", seed=0)
        assert len(full) == 100
        assert len(small) == 25
        assert full[:25] == small
        assert len({(s.m, s.n, s.d, s.t) for s in full}) == 36
        with pytest.raises(ValueError, match="sweep"):
            sweep_instances("medium")

    def test_evaluate_instance_consistent_with_point_checks(self):
        spec = InstanceSpec(m=8, n=8, d=2, t=2, seed=11, lam=0.01)
        report = evaluate_instance(spec)
        assert report.conj_residue == check_conjugation(spec)
        assert report.flip_residue == check_flip_symmetry(spec)
        assert report.passed

    def test_largest_supported_envelope_instance(self):
        # tolerances must hold out to 32x32 grids with d=4 channels, t=8 frames
        report = evaluate_instance(InstanceSpec(m=32, n=32, d=4, t=8, seed=13, lam=0.01))
        assert report.conj_residue <= 1e-9
        assert report.flip_residue <= 1e-9
        assert report.mse_gap <= 1e-10
        assert report.passed
