"""Error metrics, the finite-difference gradient oracle and ZCA whitening."""
import numpy as np
import pytest

from common.errors import DimensionMismatchError, DomainError, NotPositiveDefiniteError
from operators.backward import bartels_stewart
from operators.diffcheck import (
    defining_residual,
    error_report,
    finite_diff_grad,
    mae,
    nrmse,
    whitening_error,
    zca_covariance,
    zca_whiten,
)
from operators.forward import ForwardConfig, Method, approximate, spectral
from operators.matcore import Target, frobenius_norm, identity, random_data


def _loop_mae(approx, exact):
    total = 0.0
    for i in range(exact.shape[0]):
        for j in range(exact.shape[1]):
            total += abs(approx[i, j] - exact[i, j])
    return total / exact.size


def _loop_nrmse(approx, exact):
    diff = exact_sq = 0.0
    for i in range(exact.shape[0]):
        for j in range(exact.shape[1]):
            diff += (approx[i, j] - exact[i, j]) ** 2
            exact_sq += exact[i, j] ** 2
    return (diff / exact.size) ** 0.5 / (exact_sq / exact.size) ** 0.5


class TestMetrics:

    def test_mae_example(self):
        assert mae([[1.0, 2.0], [3.0, 4.0]], np.ones((2, 2))) == pytest.approx(1.5)

    def test_nrmse_example(self):
        assert nrmse([[1.0, 2.0], [3.0, 4.0]], np.ones((2, 2))) == pytest.approx(np.sqrt(3.5))

    def test_identical_inputs(self, rng):
        m = rng.standard_normal((4, 4))
        assert mae(m, m) == 0.0
        assert nrmse(m, m) == 0.0

    def test_against_loops(self, rng):
        approx, exact = rng.standard_normal((2, 5, 5))
        assert mae(approx, exact) == pytest.approx(_loop_mae(approx, exact), rel=1e-12)
        assert nrmse(approx, exact) == pytest.approx(_loop_nrmse(approx, exact), rel=1e-12)

    def test_nrmse_zero_exact(self):
        with pytest.raises(DomainError):
            nrmse(identity(2), np.zeros((2, 2)))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            mae(identity(2), identity(3))

    def test_whitening_error(self):
        assert whitening_error(np.diag([4.0, 1.0]), identity(2)) == pytest.approx(3.0)
        assert whitening_error(np.diag([4.0, 1.0]), np.diag([0.5, 1.0])) == 0.0

    def test_defining_residual(self):
        a = np.diag([4.0, 1.0])
        assert defining_residual(np.diag([2.0, 1.0]), a, Target.SQRT) == 0.0
        assert defining_residual(identity(2), a, Target.SQRT) == pytest.approx(3.0 / np.sqrt(17.0))
        assert defining_residual(identity(2), a, Target.ISQRT) == pytest.approx(3.0)

    def test_error_report(self):
        a = np.diag([4.0, 1.0])
        exact = np.diag([0.5, 1.0])
        report = error_report(identity(2), exact, a, Target.ISQRT)
        assert report.mae == pytest.approx(0.125)
        assert report.whitening_error == report.defining_residual == pytest.approx(3.0)
        assert error_report(np.diag([2.0, 1.0]), np.diag([2.0, 1.0]), a, Target.SQRT).whitening_error is None


class TestFiniteDifferences:

    def test_identity_input(self):
        g = np.array([[1.0, -0.5], [-0.5, 2.0]])
        np.testing.assert_allclose(finite_diff_grad(Target.SQRT, identity(2), g), g / 2.0, atol=1e-7)

    def test_scalar(self):
        np.testing.assert_allclose(finite_diff_grad(Target.SQRT, np.array([[4.0]]), np.array([[1.0]])),
                                   [[0.25]], atol=1e-7)
        np.testing.assert_allclose(finite_diff_grad(Target.ISQRT, np.array([[4.0]]), np.array([[1.0]])),
                                   [[-0.0625]], atol=1e-7)

    def test_matches_bartels_stewart(self, spd_suite, upstreams):
        for a, g in zip(spd_suite(20, 8, seed=6), upstreams(20, 8, seed=6)):
            exact = bartels_stewart(spectral(a, Target.SQRT).value, g)
            fd = finite_diff_grad(Target.SQRT, a, g)
            assert frobenius_norm(fd - exact) / frobenius_norm(exact) < 1e-5

    def test_custom_function(self, rng):
        """<G, 2A> has gradient 2G."""
        g = rng.standard_normal((3, 3))
        g = g + g.T
        np.testing.assert_allclose(finite_diff_grad(Target.SQRT, identity(3), g, function=lambda m: 2.0 * m),
                                   2.0 * g, atol=1e-8)

    def test_smaller_step_retried(self):
        """The default step leaves the SPD cone, a tenth of it does not."""
        grad = finite_diff_grad(Target.SQRT, np.diag([1.0, 2e-6]), identity(2))
        assert grad[0, 0] == pytest.approx(0.5, abs=1e-6)
        assert grad[1, 1] == pytest.approx(0.5 / np.sqrt(2e-6), rel=2e-2)

    def test_near_singular_input(self):
        with pytest.raises(NotPositiveDefiniteError):
            finite_diff_grad(Target.SQRT, np.diag([1.0, 1e-7]), identity(2))


class TestWhitening:

    def test_epsilon_must_be_positive(self, rng):
        with pytest.raises(DomainError):
            zca_covariance(rng.standard_normal((3, 30)), 0.0)

    def test_covariance_is_spd(self):
        cov = zca_covariance(random_data(6, 4, seed=0), 1e-5)
        np.testing.assert_array_equal(cov, cov.T)
        assert np.linalg.eigvalsh(cov)[0] >= 1e-5 * (1 - 1e-9)

    def test_whitened_covariance_is_identity(self):
        data = random_data(4, 400, seed=1)
        cov = zca_covariance(data, 1e-5)
        whitened = zca_whiten(data, spectral(cov, Target.ISQRT).value)
        np.testing.assert_allclose(whitened @ whitened.T / data.shape[1], identity(4), atol=1e-4)

    def test_whitening_suite(self):
        suite = [zca_covariance(random_data(16, 128, seed=3, stream=index), 1e-5) for index in range(50)]
        exact = [spectral(a, Target.ISQRT).value for a in suite]
        assert max(whitening_error(a, y) for a, y in zip(suite, exact)) < 1e-8

        def mean_error(method):
            cfg = ForwardConfig.from_config(method, Target.ISQRT)
            return np.mean([whitening_error(a, approximate(a, cfg).value) for a in suite])

        assert mean_error(Method.MPA) < mean_error(Method.MTP)
