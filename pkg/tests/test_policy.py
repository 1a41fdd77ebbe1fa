import math

import numpy as np
import pytest
from scipy import special

from conftest import radial_integral_2d
from meddpy.ddp import BackwardResult, backward_pass, rollout_feedback
from meddpy.policy import (GaussianPolicy, MixturePolicy,
                           NormalizationConstantException, PolicyException,
                           QGaussianPolicy, admissible_q_range,
                           build_gaussian_policy, build_qgaussian_policy,
                           fuse_multimodal, normalization_residual,
                           sample_control_sequence,
                           solve_normalization_constant)
from meddpy.qgauss import escort_transform, moments, pdf_nd
from meddpy.trajectory import Trajectory, rollout


def backward_result(Quu, Vtilde, n_x=1):
    """A backward pass with zero gains and a constant Q_uu."""
    Quu = np.asarray(Quu, dtype=float)
    Vtilde = np.asarray(Vtilde, dtype=float)
    T, n_u = len(Vtilde), Quu.shape[0]
    inv = np.linalg.inv(Quu)
    inv = 0.5 * (inv + inv.T)
    return BackwardResult(np.zeros((T, n_u)), np.zeros((T, n_u, n_x)),
                          np.zeros((T, n_u)), np.tile(Quu, (T, 1, 1)),
                          np.tile(inv, (T, 1, 1)), Vtilde, None, None, 0.0,
                          0.0, 0.0)


def trajectory_with_cost(cost):
    return Trajectory(np.zeros((2, 1)), np.zeros((1, 1)),
                      np.array([cost, 0.0]))


def reference_sides(C, Vtilde, alpha, q, n, det):
    """Both sides of the normalization equation in linear space."""
    s = 1.0 / (q - 1.0)
    lhs = (Vtilde + alpha * C / (q - 1.0)) ** (0.5 * n * (q - 1.0)) * C
    rhs = ((n + 2.0 - n * q) / 2.0 * (
        math.sqrt(det) * (2.0 * math.pi) ** (0.5 * n)
        * math.gamma(s - 0.5 * n) / math.gamma(s)) ** (1.0 - q))
    return lhs, rhs


class TestNormalizationConstant:
    def test_admissible_range(self):
        assert admissible_q_range(2) == (1.0, 2.0)
        assert admissible_q_range(4) == (1.0, 1.5)

    def test_residual_increasing(self):
        values = [normalization_residual(u, 3.0, 2.0, 1.4, 2, 0.0)
                  for u in np.linspace(-30.0, 30.0, 500)]
        assert np.all(np.diff(values) > 0)

    def test_grid_scan(self):
        C = solve_normalization_constant(0.0, 10.0, 1.8, 2, Quu_inv_det=1.0)
        grid = np.logspace(-6.0, 6.0, 1000000)
        lhs = (10.0 * grid / 0.8) ** 0.8 * grid
        _, rhs = reference_sides(1.0, 0.0, 10.0, 1.8, 2, 1.0)
        scanned = grid[np.argmin(np.abs(np.log(lhs) - math.log(rhs)))]
        assert C == pytest.approx(scanned, rel=1e-4)

    def test_residual_on_random_inputs(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            n = int(rng.choice([2, 4]))
            q = rng.uniform(1.01, 1.0 + 2.0 / n - 0.02)
            Vtilde = rng.uniform(0.0, 1000.0)
            alpha = math.exp(rng.uniform(math.log(0.01), math.log(100.0)))
            det = math.exp(rng.uniform(math.log(1e-3), math.log(1e3)))
            C = solve_normalization_constant(Vtilde, alpha, q, n,
                                             Quu_inv_det=det)
            assert C > 0.0
            lhs, rhs = reference_sides(C, Vtilde, alpha, q, n, det)
            assert abs(lhs - rhs) < 1e-10 * rhs

    def test_log_determinant_argument(self):
        a = solve_normalization_constant(2.0, 1.0, 1.5, 2, Quu_inv_det=0.25)
        b = solve_normalization_constant(2.0, 1.0, 1.5, 2,
                                         log_Quu_inv_det=math.log(0.25))
        assert a == b

    def test_decreasing_in_value(self):
        values = [solve_normalization_constant(v, 1.0, 1.5, 2,
                                               Quu_inv_det=1.0)
                  for v in (0.0, 1.0, 10.0, 100.0)]
        assert np.all(np.diff(values) < 0)

    def test_matches_escort_integral(self):
        C = solve_normalization_constant(0.0, 10.0, 1.8, 2, Quu_inv_det=1.0)
        policy = build_qgaussian_policy(backward_result(np.eye(2), [0.0]),
                                        10.0, 1.8)
        dist = policy.distributions[0]
        assert policy.C[0] == pytest.approx(C, rel=1e-12)
        integral = radial_integral_2d(
            lambda r: pdf_nd(dist, np.array([r, 0.0])) ** 1.8,
            2.0 * 1.8 / 0.8)
        assert integral == pytest.approx(C, rel=1e-3)
        assert dist.escort_normalizer() == pytest.approx(C, rel=1e-9)

    def test_invalid_inputs(self):
        with pytest.raises(NormalizationConstantException):
            solve_normalization_constant(1.0, 1.0, 2.0, 2, Quu_inv_det=1.0)
        with pytest.raises(NormalizationConstantException):
            solve_normalization_constant(1.0, 1.0, 1.0, 2, Quu_inv_det=1.0)
        with pytest.raises(NormalizationConstantException):
            solve_normalization_constant(-1.0, 1.0, 1.5, 2, Quu_inv_det=1.0)
        with pytest.raises(NormalizationConstantException):
            solve_normalization_constant(1.0, 0.0, 1.5, 2, Quu_inv_det=1.0)
        with pytest.raises(NormalizationConstantException):
            solve_normalization_constant(1.0, 1.0, 1.5, 2)


class TestGaussianPolicy:
    def test_covariance(self):
        policy = build_gaussian_policy(
            backward_result(2.0 * np.eye(2), [1.0, 1.0]), 10.0)
        np.testing.assert_allclose(policy.sampling_covariance(0),
                                   5.0 * np.eye(2))
        np.testing.assert_allclose(policy.exploration_scale(), [10.0, 10.0])

    def test_invalid_temperature(self):
        with pytest.raises(PolicyException):
            GaussianPolicy(backward_result(np.eye(2), [1.0]), 0.0)

    def test_sample_covariance(self):
        Quu = np.array([[2.0, 0.5], [0.5, 1.0]])
        policy = build_gaussian_policy(backward_result(Quu, np.ones(500)),
                                       3.0)
        rng = np.random.default_rng(1)
        draws = np.concatenate([policy.sample_noise(rng)
                                for _ in range(200)])
        expected = 3.0 * np.linalg.inv(Quu)
        error = np.linalg.norm(np.cov(draws, rowvar=False) - expected)
        assert error < 0.05 * np.linalg.norm(expected)


class TestQGaussianPolicy:
    def test_shannon_limit(self):
        Quu = np.array([[3.0, 0.4], [0.4, 1.5]])
        q = 1.0 + 1e-4
        policy = build_qgaussian_policy(backward_result(Quu, [5.0]), 2.0, q)
        expected = 2.0 * np.linalg.inv(Quu)
        error = np.linalg.norm(policy.sampling_covariance(0) - expected)
        assert error < 0.01 * np.linalg.norm(expected)

    def test_scale_grows_with_value(self):
        Vtilde = [0.0, 1.0, 10.0, 100.0]
        policy = build_qgaussian_policy(backward_result(np.eye(2), Vtilde),
                                        1.0, 1.5)
        assert np.all(np.diff(policy.scales) > 0)
        np.testing.assert_allclose(
            policy.scales,
            2.0 * (0.5 * np.array(Vtilde) + policy.C) / (4.0 - 3.0))

    def test_escort_is_sampled(self):
        policy = build_qgaussian_policy(backward_result(np.eye(2), [1.0]),
                                        1.0, 1.8)
        escort = escort_transform(policy.distributions[0])
        np.testing.assert_allclose(policy.escorts[0].Sigma_q, escort.Sigma_q)
        np.testing.assert_allclose(policy.sampling_covariance(0),
                                   moments(escort).covariance)

    def test_sigma_max(self):
        policy = build_qgaussian_policy(
            backward_result(np.eye(2), [0.0, 1000.0]), 1.0, 1.5,
            sigma_max=2.0)
        assert policy.scales[1] == 2.0
        np.testing.assert_allclose(policy.Sigma_q[1], 2.0 * np.eye(2))

    def test_admissibility(self):
        bwd = backward_result(np.eye(2), [1.0])
        with pytest.raises(PolicyException):
            build_qgaussian_policy(bwd, 1.0, 2.0)
        with pytest.raises(PolicyException):
            build_qgaussian_policy(backward_result(np.eye(2), [-1.0]), 1.0,
                                   1.5)
        assert isinstance(build_qgaussian_policy(bwd, 1.0, 1.8),
                          QGaussianPolicy)

    def test_sample_covariance(self):
        Quu = np.array([[2.0, 0.5], [0.5, 1.0]])
        policy = build_qgaussian_policy(backward_result(Quu, np.ones(200)),
                                        2.0, 1.3)
        rng = np.random.default_rng(2)
        draws = np.concatenate([policy.sample_noise(rng)
                                for _ in range(500)])
        expected = policy.sampling_covariance(0)
        error = np.linalg.norm(np.cov(draws, rowvar=False) - expected)
        assert error < 0.05 * np.linalg.norm(expected)


class TestMixture:
    def test_single_mode(self):
        policy = fuse_multimodal([backward_result(np.eye(2), [1.0])],
                                 [trajectory_with_cost(3.0)], 1.0)
        np.testing.assert_allclose(policy.weights, [1.0])

    def test_equal_costs(self):
        bwds = [backward_result(np.eye(2), [1.0]) for _ in range(4)]
        trajs = [trajectory_with_cost(2.0) for _ in range(4)]
        policy = fuse_multimodal(bwds, trajs, 5.0)
        np.testing.assert_allclose(policy.weights, np.full(4, 0.25))

    def test_weights(self):
        alpha = 2.0
        bwds = [backward_result(np.eye(2), [1.0]) for _ in range(2)]
        trajs = [trajectory_with_cost(0.0),
                 trajectory_with_cost(alpha * math.log(9.0))]
        policy = fuse_multimodal(bwds, trajs, alpha)
        np.testing.assert_allclose(policy.weights, [0.9, 0.1], rtol=1e-12)

    def test_shift_invariance(self):
        costs = np.array([1.0, 4.0, 2.5])
        bwds = [backward_result(np.eye(2), [1.0]) for _ in range(3)]
        a = fuse_multimodal(bwds, [trajectory_with_cost(c) for c in costs],
                            1.5)
        b = fuse_multimodal(bwds, [trajectory_with_cost(c + 1000.0)
                                   for c in costs], 1.5)
        np.testing.assert_allclose(a.weights, b.weights, rtol=1e-10)
        np.testing.assert_allclose(a.weights,
                                   special.softmax(-costs / 1.5))

    def test_component_frequencies(self):
        components = [GaussianPolicy(backward_result(np.eye(2), [1.0]), 1.0)
                      for _ in range(2)]
        policy = MixturePolicy(components, [0.9, 0.1])
        rng = np.random.default_rng(3)
        chosen = [policy.choose_component(rng) for _ in range(10000)]
        assert np.mean(np.array(chosen) == 0) == pytest.approx(0.9, abs=0.02)
        np.testing.assert_allclose(policy.exploration_scale(), [1.0])


class TestSampling:
    def test_noiseless_matches_full_step(self, car_problem):
        dyn, cost, x0, U = car_problem
        base = rollout(dyn, cost, x0, U)
        bwd = backward_pass(base, dyn, cost, reg=10.0)
        policy = build_gaussian_policy(bwd, 1.0)
        sampled = sample_control_sequence(policy, base, dyn, cost,
                                          np.random.default_rng(0),
                                          noiseless=True)
        expected = rollout_feedback(dyn, cost, base, bwd.k, bwd.K, step=1.0)
        np.testing.assert_array_equal(sampled.X, expected.X)
        np.testing.assert_array_equal(sampled.U, expected.U)

    def test_noise_changes_trajectory(self, car_problem):
        dyn, cost, x0, U = car_problem
        base = rollout(dyn, cost, x0, U)
        policy = build_gaussian_policy(backward_pass(base, dyn, cost,
                                                     reg=10.0), 1.0)
        a = sample_control_sequence(policy, base, dyn, cost,
                                    np.random.default_rng(0))
        b = sample_control_sequence(policy, base, dyn, cost,
                                    np.random.default_rng(0))
        c = sample_control_sequence(policy, base, dyn, cost,
                                    np.random.default_rng(1))
        np.testing.assert_array_equal(a.X, b.X)
        assert not np.array_equal(a.X, c.X)

    def test_divergence_keeps_reference(self, car_problem):
        dyn, cost, x0, U = car_problem
        base = rollout(dyn, cost, x0, U)

        class Diverging:
            calls = 0

            def sample_feedback(self, rng):
                Diverging.calls += 1
                T = base.horizon
                return (np.zeros((T, 2)), np.zeros((T, 2, 3)),
                        np.full((T, 2), np.inf))

        with np.errstate(all='ignore'):
            result = sample_control_sequence(Diverging(), base, dyn, cost,
                                             np.random.default_rng(0),
                                             retries=3)
        assert Diverging.calls == 4
        assert result is not base
        np.testing.assert_array_equal(result.X, base.X)
