"""Forward approximants of A^{1/2} and A^{-1/2} against the spectral oracle."""
import numpy as np
import pytest

from common.errors import ConfigError, DivergenceError, NotPositiveDefiniteError
from operators.coeffs import taylor_table
from operators.diffcheck.metrics import defining_residual, mae
from operators.forward import (
    ForwardConfig,
    Method,
    approximate,
    forward_batch,
    mpa,
    mtp,
    ns_coupled,
    ns_onevar,
    poly_eval_normalized,
    spectral,
)
from operators.forward.newton_schulz import coupled_iterates
from operators.matcore import OpCounters, Target, frobenius_norm, identity


def _naive_poly(a, coeffs, sign):
    """I + sign * sum_k c_k Z^k accumulated power by power."""
    z = identity(a.shape[0]) - a / frobenius_norm(a)
    power = identity(a.shape[0])
    total = identity(a.shape[0])
    for c in coeffs:
        power = power @ z
        total = total + sign * c * power
    return total


def _cfg(method, target, **params):
    return ForwardConfig(method=Method(method), target=target, **params)


class TestForwardConfig:

    def test_defaults(self):
        cfg = ForwardConfig.from_config(Method.MPA, Target.SQRT)
        assert (cfg.degree_k, cfg.iterations, cfg.pade_degree) == (11, 5, 5)

    def test_overrides(self):
        assert ForwardConfig.from_config(Method.MTP, Target.ISQRT, degree_k=7).degree_k == 7

    @pytest.mark.parametrize("degree", [1, 4, 10])
    def test_mpa_needs_odd_degree(self, degree):
        with pytest.raises(ConfigError):
            _cfg("mpa", Target.SQRT, degree_k=degree)

    def test_iterations_positive(self):
        with pytest.raises(ConfigError):
            _cfg("ns", Target.SQRT, iterations=0)

    def test_onevar_is_inverse_only(self):
        with pytest.raises(ConfigError):
            _cfg("ns_onevar", Target.SQRT)


class TestPolynomialEvaluation:

    def test_zero_variable(self):
        np.testing.assert_array_equal(poly_eval_normalized(np.array([[5.0]]), [0.5], -1), [[1.0]])

    def test_zero_coefficients(self, spd_suite):
        a = spd_suite(1, 4)[0]
        np.testing.assert_array_equal(poly_eval_normalized(a, np.zeros(5), 1), identity(4))

    @pytest.mark.parametrize("target", list(Target))
    def test_matches_naive_evaluator(self, spd_suite, target):
        a = spd_suite(1, 8)[0]
        coeffs = taylor_table(target, 11).c
        counters = OpCounters()
        horner = poly_eval_normalized(a, coeffs, target.sign, counters)
        np.testing.assert_allclose(horner, _naive_poly(a, coeffs, target.sign), atol=1e-12)
        assert counters.matmul == len(coeffs) - 1


class TestScalarInputs:

    def test_mtp(self):
        cfg = _cfg("mtp", Target.SQRT)
        np.testing.assert_array_equal(mtp(np.array([[4.0]]), cfg).value, [[2.0]])
        np.testing.assert_array_equal(mtp(np.array([[4.0]]), _cfg("mtp", Target.ISQRT)).value, [[0.5]])

    def test_mpa(self):
        np.testing.assert_allclose(mpa(np.array([[9.0]]), _cfg("mpa", Target.SQRT)).value, [[3.0]], rtol=1e-15)
        np.testing.assert_allclose(mpa(np.array([[9.0]]), _cfg("mpa", Target.ISQRT)).value, [[1.0 / 3.0]],
                                   rtol=1e-15)

    def test_newton_schulz(self):
        sqrt, isqrt = ns_coupled(np.array([[4.0]]), _cfg("ns", Target.SQRT))
        np.testing.assert_allclose(sqrt.value, [[2.0]], atol=1e-6)
        np.testing.assert_allclose(isqrt.value, [[0.5]], atol=1e-6)
        np.testing.assert_allclose(ns_onevar(np.array([[4.0]]), _cfg("ns_onevar", Target.ISQRT)).value, [[0.5]],
                                   atol=1e-6)

    def test_pre_norm(self):
        assert mtp(np.array([[4.0]]), _cfg("mtp", Target.SQRT)).pre_norm == 4.0


class TestNewtonSchulz:

    @pytest.mark.parametrize("dim", [1, 2, 4])
    def test_identity_is_fixed(self, dim):
        sqrt, isqrt = ns_coupled(identity(dim), _cfg("ns", Target.SQRT))
        np.testing.assert_allclose(sqrt.value, identity(dim), atol=1e-8)
        np.testing.assert_allclose(isqrt.value, identity(dim), atol=1e-8)
        np.testing.assert_allclose(ns_onevar(identity(dim), _cfg("ns_onevar", Target.ISQRT)).value,
                                   identity(dim), atol=1e-8)

    def test_coupled_invariant(self, spd_suite):
        """Z_k^{-1} Y_k stays equal to A / ||A||_F."""
        a = spd_suite(1, 32)[0]
        y, z, norm, steps = coupled_iterates(a, 5, 1e6, OpCounters())
        assert len(steps) == 5
        np.testing.assert_allclose(np.linalg.solve(z, y), a / norm, atol=1e-6)

    def test_onevar_matches_coupled(self, spd_suite):
        for a in spd_suite(50, 16, seed=1):
            _, coupled = ns_coupled(a, _cfg("ns", Target.ISQRT))
            onevar = ns_onevar(a, _cfg("ns_onevar", Target.ISQRT))
            assert np.max(np.abs(onevar.value - coupled.value)) < 1e-10

    def test_divergence_guard(self, spd_suite):
        cfg = ForwardConfig(method=Method.NS_COUPLED, target=Target.SQRT, divergence_factor=1e-3)
        with pytest.raises(DivergenceError):
            ns_coupled(spd_suite(1, 4)[0], cfg)


class TestSpectral:

    def test_diagonal(self):
        a = np.diag([4.0, 9.0])
        np.testing.assert_allclose(spectral(a, Target.SQRT).value, np.diag([2.0, 3.0]), atol=1e-14)
        np.testing.assert_allclose(spectral(a, Target.ISQRT).value, np.diag([0.5, 1.0 / 3.0]), atol=1e-14)

    def test_squares_back(self, spd_suite):
        a = spd_suite(1, 8)[0]
        root = spectral(a, Target.SQRT)
        assert frobenius_norm(root.value @ root.value - a) < 1e-9
        assert root.counters.eig == 1

    def test_inverse_needs_positive_eigenvalues(self):
        with pytest.raises(NotPositiveDefiniteError):
            spectral(np.diag([1.0, 0.0]), Target.ISQRT)


class TestCounters:

    @pytest.mark.parametrize("degree", [3, 5, 7, 11, 17])
    def test_mtp(self, spd_suite, degree):
        for target in Target:
            result = mtp(spd_suite(1, 6)[0], _cfg("mtp", target, degree_k=degree))
            assert result.counters.matmul == degree - 1
            assert result.counters.solve == 0

    @pytest.mark.parametrize("degree", [3, 5, 7, 11, 17])
    def test_mpa(self, spd_suite, degree):
        for target in Target:
            result = mpa(spd_suite(1, 6)[0], _cfg("mpa", target, degree_k=degree))
            assert result.counters.matmul == (degree - 3) // 2
            assert result.counters.solve == 1

    @pytest.mark.parametrize("iterations", [1, 3, 5, 7])
    def test_newton_schulz(self, spd_suite, iterations):
        sqrt, isqrt = ns_coupled(spd_suite(1, 6)[0], _cfg("ns", Target.SQRT, iterations=iterations))
        assert sqrt.counters.matmul == isqrt.counters.matmul == 3 * iterations
        onevar = ns_onevar(spd_suite(1, 6)[0], _cfg("ns_onevar", Target.ISQRT, iterations=iterations))
        assert onevar.counters.matmul == 3 * iterations


class TestAccuracy:

    def test_mpa_beats_newton_schulz(self, spd_suite):
        suite = spd_suite(100, 64)
        for target in Target:
            mpa_cfg = _cfg("mpa", target)
            ns_cfg = _cfg("ns", target)
            mpa_errors, ns_errors = [], []
            for a in suite:
                exact = spectral(a, target).value
                mpa_errors.append(mae(approximate(a, mpa_cfg).value, exact))
                ns_errors.append(mae(approximate(a, ns_cfg).value, exact))
            assert np.mean(mpa_errors) < np.mean(ns_errors), target

    def test_mpa_beats_mtp(self, spd_suite):
        a = spd_suite(1, 64, seed=4)[0]
        for target in Target:
            exact = spectral(a, target).value
            mtp_error = mae(mtp(a, _cfg("mtp", target)).value, exact)
            mpa_error = mae(mpa(a, _cfg("mpa", target)).value, exact)
            assert np.isfinite(mtp_error)
            assert mpa_error < mtp_error

    def test_mpa_residual_below_newton_schulz(self, spd_suite):
        a = spd_suite(1, 64, seed=6)[0]
        mpa_residual = defining_residual(mpa(a, _cfg("mpa", Target.SQRT)).value, a, Target.SQRT)
        sqrt, _ = ns_coupled(a, _cfg("ns", Target.SQRT))
        assert mpa_residual < defining_residual(sqrt.value, a, Target.SQRT)

    @pytest.mark.parametrize("method,key,grid", [
        ("mtp", "degree_k", [3, 7, 11, 15]),
        ("mpa", "degree_k", [3, 7, 11, 15]),
        ("ns", "iterations", [2, 3, 4, 5]),
    ])
    def test_residual_decreases(self, spd_suite, method, key, grid):
        suite = spd_suite(10, 16, seed=8)
        for target in Target:
            residuals = [
                np.mean([defining_residual(approximate(a, _cfg(method, target, **{key: value})).value, a, target)
                         for a in suite])
                for value in grid
            ]
            assert all(np.isfinite(residuals))
            assert np.all(np.diff(residuals) < 0.0), (method, target, residuals)


class TestAlgebraicProperties:

    def test_mpa_targets_are_mutual_inverses(self, spd_suite):
        """Both MPA targets are built from the same P and Q, so their product is I up to roundoff."""
        a = spd_suite(1, 16, seed=2)[0]
        root = mpa(a, _cfg("mpa", Target.SQRT)).value
        inverse_root = mpa(a, _cfg("mpa", Target.ISQRT)).value
        assert frobenius_norm(root @ inverse_root - identity(16)) < 1e-8

    @pytest.mark.parametrize("method", ["mtp", "mpa", "ns"])
    def test_commutes_with_input(self, spd_suite, method):
        a = spd_suite(1, 12, seed=3)[0]
        for target in Target:
            y = approximate(a, _cfg(method, target)).value
            assert np.max(np.abs(y @ a - a @ y)) < 1e-8

    @pytest.mark.parametrize("method", ["mtp", "mpa", "ns", "spectral"])
    def test_scale_equivariance(self, spd_suite, method):
        a = spd_suite(1, 10, seed=9)[0]
        cfg = _cfg(method, Target.SQRT)
        np.testing.assert_allclose(approximate(3.0 * a, cfg).value, np.sqrt(3.0) * approximate(a, cfg).value,
                                   atol=1e-8)

    def test_symmetric_outputs(self, spd_suite):
        a = spd_suite(1, 9, seed=1)[0]
        for method in ("mtp", "mpa", "ns", "spectral"):
            value = approximate(a, _cfg(method, Target.ISQRT)).value
            np.testing.assert_array_equal(value, value.T)


class TestNonSpdInput:

    @pytest.mark.parametrize("operator", [mtp, mpa, ns_coupled])
    def test_rejected(self, operator):
        method = {mtp: "mtp", mpa: "mpa", ns_coupled: "ns"}[operator]
        with pytest.raises(NotPositiveDefiniteError):
            operator(np.diag([1.0, -2.0]), _cfg(method, Target.SQRT))


class TestBatch:

    def test_batch_matches_single_calls(self, spd_suite):
        suite = spd_suite(5, 6)
        cfg = _cfg("mpa", Target.ISQRT)
        results, counters = forward_batch(suite, cfg, threads=3)
        for a, result in zip(suite, results):
            np.testing.assert_array_equal(result.value, mpa(a, cfg).value)
        assert counters.matmul == 5 * results[0].counters.matmul
        assert counters.solve == 5
