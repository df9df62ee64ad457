import numpy as np
import pytest
from sklearn.base import clone

from circfilt.estimator import CirculantRidge
from circfilt.labels import default_sigma, gaussian_label
from circfilt.solver import filter_to_spatial, solve_filter
from circfilt.spectral import response


class TestSklearnConventions:
    def test_get_and_set_params(self):
        model = CirculantRidge(mode="convolution", lam=0.5, sigma=2.0)
        params = model.get_params()
        assert params == {"mode": "convolution", "lam": 0.5, "sigma": 2.0}
        model.set_params(lam=0.25)
        assert model.lam == 0.25

    def test_clone_keeps_params_and_drops_state(self, rng):
        X = rng.standard_normal((2, 1, 4, 4))
        model = CirculantRidge(lam=0.1).fit(X)
        copy = clone(model)
        assert copy.get_params() == model.get_params()
        assert not hasattr(copy, "filter_spectral_")

    def test_fit_returns_self(self, rng):
        X = rng.standard_normal((2, 1, 4, 4))
        model = CirculantRidge()
        assert model.fit(X) is model

    def test_predict_before_fit_raises(self, rng):
        with pytest.raises(RuntimeError, match="not fitted"):
            CirculantRidge().predict(rng.standard_normal((1, 1, 4, 4)))


class TestFit:
    def test_learned_attributes(self, rng):
        X = rng.standard_normal((3, 2, 8, 8))
        model = CirculantRidge(lam=1e-2).fit(X)
        assert model.filter_spectral_.shape == (2, 8, 8)
        assert model.filter_spectral_.dtype == np.complex128
        assert model.filter_spatial_.shape == (2, 8, 8)
        assert model.filter_spatial_.dtype == np.float64
        assert model.n_channels_ == 2
        assert model.grid_shape_ == (8, 8)

    def test_matches_direct_solver_call(self, rng):
        X = rng.standard_normal((3, 2, 8, 8))
        y = gaussian_label(8, 8, 1.0)
        weights = np.array([0.2, 0.3, 0.5])
        for mode in ("correlation", "convolution"):
            model = CirculantRidge(mode=mode, lam=1e-2).fit(X, y, sample_weight=weights)
            expected = solve_filter(X, y, lam=1e-2, weights=weights, mode=mode)
            assert np.array_equal(model.filter_spectral_, expected)
            assert np.array_equal(model.filter_spatial_, filter_to_spatial(expected))

    def test_default_label_is_the_gaussian_rule(self, rng):
        X = rng.standard_normal((2, 1, 8, 8))
        model = CirculantRidge().fit(X)
        assert np.array_equal(model.label_, gaussian_label(8, 8, default_sigma(8, 8)))
        custom = CirculantRidge(sigma=2.0).fit(X)
        assert np.array_equal(custom.label_, gaussian_label(8, 8, 2.0))

    def test_rejects_mismatched_label(self, rng):
        X = rng.standard_normal((2, 1, 8, 8))
        with pytest.raises(ValueError):
            CirculantRidge().fit(X, gaussian_label(4, 4, 1.0))


class TestPredict:
    def test_prediction_equals_response(self, rng):
        X = rng.standard_normal((3, 2, 8, 8))
        Z = rng.standard_normal((2, 2, 8, 8))
        model = CirculantRidge(lam=1e-2).fit(X)
        out = model.predict(Z)
        assert out.shape == (2, 8, 8)
        for k in range(2):
            assert np.array_equal(out[k], response(Z[k], model.filter_spectral_, "correlation"))

    def test_respond_single_sample(self, rng):
        X = rng.standard_normal((2, 2, 8, 8))
        model = CirculantRidge().fit(X)
        assert np.array_equal(model.respond(X[0]), model.predict(X[:1])[0])

    def test_training_responses_approach_label(self, rng):
        X = rng.standard_normal((1, 3, 16, 16))
        model = CirculantRidge(lam=1e-6).fit(X)
        resp = model.predict(X)[0]
        assert np.abs(resp - model.label_).max() < 1e-3

    def test_shape_validation(self, rng):
        X = rng.standard_normal((2, 2, 8, 8))
        model = CirculantRidge().fit(X)
        with pytest.raises(ValueError, match="does not match"):
            model.predict(rng.standard_normal((1, 3, 8, 8)))
        with pytest.raises(ValueError, match="does not match"):
            model.respond(rng.standard_normal((2, 4, 4)))

    def test_score_is_negative_mse(self, rng):
        X = rng.standard_normal((2, 1, 8, 8))
        model = CirculantRidge().fit(X)
        assert model.score(X) <= 0.0

    def test_modes_score_identically_on_fresh_samples(self, rng):
        X = rng.standard_normal((3, 2, 8, 8))
        Z = rng.standard_normal((4, 2, 8, 8))
        corr = CirculantRidge(mode="correlation", lam=1e-2).fit(X)
        conv = CirculantRidge(mode="convolution", lam=1e-2).fit(X)
        assert corr.score(Z) == pytest.approx(conv.score(Z), rel=1e-12)
