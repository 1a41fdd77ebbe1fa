"""policy.py: Maximum-entropy exploration policies built from a DDP
   backward pass, and closed-loop sampling of control sequences."""

import logging
import math

import numpy as np
from scipy import linalg, special

from meddpy.ddp import rollout_feedback
from meddpy.qgauss import (QGaussianND, escort_transform, moments, sample)
from meddpy.tsallis_math import log_gamma_fn
from meddpy.trajectory import RolloutDivergenceException

logger = logging.getLogger(__name__)

MAX_BRACKET_EXPANSIONS = 200
MAX_BISECTIONS = 200
RESIDUAL_TOL = 1e-12
DEFAULT_SAMPLE_RETRIES = 5


class PolicyException(Exception):
    pass


class NormalizationConstantException(Exception):
    pass


def admissible_q_range(n_u):
    """Open interval of entropic indices for which a q-Gaussian policy over
    n_u controls exists."""
    return 1.0, 1.0 + 2.0 / n_u


def _log_rhs(q, n_u, log_Quu_inv_det):
    s = 1.0 / (q - 1.0)
    if not s - 0.5 * n_u > 0:
        raise NormalizationConstantException(
            'policy:solve_normalization_constant',
            'gamma pole: q=' + str(q) + ' is too close to 1+2/n_u')
    return (math.log((n_u + 2.0 - n_u * q) / 2.0)
            + (1.0 - q) * (0.5 * log_Quu_inv_det
                           + 0.5 * n_u * math.log(2.0 * math.pi)
                           + log_gamma_fn(s - 0.5 * n_u) - log_gamma_fn(s)))


def normalization_residual(log_c, Vtilde, alpha, q, n_u, log_rhs):
    """log(LHS) - log(RHS) of the normalization equation at C = exp(log_c).

    Strictly increasing in log_c with slope between 1 and 2.
    """
    log_v = math.log(Vtilde) if Vtilde > 0.0 else -math.inf
    log_bracket = np.logaddexp(log_v, log_c + math.log(alpha / (q - 1.0)))
    return 0.5 * n_u * (q - 1.0) * float(log_bracket) + log_c - log_rhs


def solve_normalization_constant(Vtilde, alpha, q, n_u, Quu_inv_det=None,
                                 log_Quu_inv_det=None):
    """Solve for the escort normalizer C of the q-Gaussian policy.

    C satisfies
    [Vtilde + alpha C/(q-1)]^{(n_u/2)(q-1)} C = RHS with
    RHS = ((n_u+2-n_u q)/2) [|Q_uu^-1|^{1/2} (2 pi)^{n_u/2}
    G(1/(q-1) - n_u/2) / G(1/(q-1))]^{1-q}.
    The equation is bisected in log C after expanding a bracket.

    :param Vtilde: value estimate, nonnegative
    :type Vtilde: float
    :param alpha: temperature, positive
    :type alpha: float
    :param q: entropic index, 1 < q < 1 + 2/n_u
    :type q: float
    :param n_u: control dimension
    :type n_u: int
    :param Quu_inv_det: determinant of Q_uu^-1
    :type Quu_inv_det: float
    :param log_Quu_inv_det: its logarithm, used instead when given
    :type log_Quu_inv_det: float
    :rtype: float
    """
    low_q, high_q = admissible_q_range(n_u)
    if not low_q < q < high_q:
        raise NormalizationConstantException(
            'policy:solve_normalization_constant',
            'q=' + str(q) + ' outside (' + str(low_q) + ', ' + str(high_q)
            + ')')
    if not Vtilde >= 0.0:
        raise NormalizationConstantException(
            'policy:solve_normalization_constant',
            'Vtilde must be nonnegative, got ' + str(Vtilde))
    if not alpha > 0.0:
        raise NormalizationConstantException(
            'policy:solve_normalization_constant',
            'alpha must be positive, got ' + str(alpha))
    if log_Quu_inv_det is None:
        if Quu_inv_det is None or not Quu_inv_det > 0.0:
            raise NormalizationConstantException(
                'policy:solve_normalization_constant',
                'a positive Quu_inv_det is required')
        log_Quu_inv_det = math.log(Quu_inv_det)

    log_rhs = _log_rhs(q, n_u, log_Quu_inv_det)

    def g(u):
        return normalization_residual(u, Vtilde, alpha, q, n_u, log_rhs)

    lo = hi = log_rhs
    width = 1.0
    expansions = 0
    while g(lo) > 0.0:
        lo -= width
        width *= 2.0
        expansions += 1
        if expansions > MAX_BRACKET_EXPANSIONS:
            raise NormalizationConstantException(
                'policy:solve_normalization_constant',
                'could not bracket C from below')
    width = 1.0
    while g(hi) < 0.0:
        hi += width
        width *= 2.0
        expansions += 1
        if expansions > MAX_BRACKET_EXPANSIONS:
            raise NormalizationConstantException(
                'policy:solve_normalization_constant',
                'could not bracket C from above')

    mid = 0.5 * (lo + hi)
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        value = g(mid)
        if abs(value) < RESIDUAL_TOL or mid == lo or mid == hi:
            break
        if value > 0.0:
            hi = mid
        else:
            lo = mid
    return math.exp(mid)


class GaussianPolicy:
    """Shannon maximum-entropy policy N(k + K dx, alpha Q_uu^-1).

    :param bwd: backward pass the policy is built on
    :type bwd: BackwardResult
    :param alpha: temperature
    :type alpha: float
    """
    def __init__(self, bwd, alpha):
        if not alpha > 0.0:
            raise PolicyException('GaussianPolicy:__init__',
                                  'alpha must be positive')
        self.alpha = float(alpha)
        self.k = bwd.k
        self.K = bwd.K
        self.covariance = self.alpha * bwd.Quu_inv
        self._chol = np.array([linalg.cholesky(c, lower=True)
                               for c in self.covariance])

    @property
    def horizon(self):
        return self.k.shape[0]

    def sampling_covariance(self, t):
        return self.covariance[t]

    def exploration_scale(self):
        """Multiplier of Q_uu^-1 per timestep."""
        return np.full(self.horizon, self.alpha)

    def sample_noise(self, rng):
        z = rng.standard_normal(self.k.shape)
        return np.einsum('tij,tj->ti', self._chol, z)

    def sample_feedback(self, rng):
        """Draw one noise sequence; return (k, K, eta)."""
        return self.k, self.K, self.sample_noise(rng)


class QGaussianPolicy:
    """Tsallis maximum-entropy policy.

    Each timestep holds a q-Gaussian with q-mean k_t + K_t dx and
    q-covariance scale_t Q_uu^-1, scale_t = 2[(q-1) Vtilde_t + C_t alpha] /
    (n_u + 2 - n_u q). Noise is drawn from the escort distributions.
    """
    def __init__(self, k, K, q, alpha, C, scales, Sigma_q):
        self.k = k
        self.K = K
        self.q = float(q)
        self.alpha = float(alpha)
        self.C = C
        self.scales = scales
        self.Sigma_q = Sigma_q
        n_u = k.shape[1]
        self.distributions = [QGaussianND(q, np.zeros(n_u), S)
                              for S in Sigma_q]
        self.escorts = [escort_transform(d) for d in self.distributions]

    @property
    def horizon(self):
        return self.k.shape[0]

    def sampling_covariance(self, t):
        return moments(self.escorts[t]).covariance

    def exploration_scale(self):
        return self.scales.copy()

    def sample_noise(self, rng):
        return np.array([sample(e, rng, 1)[0] for e in self.escorts])

    def sample_feedback(self, rng):
        return self.k, self.K, self.sample_noise(rng)


class MixturePolicy:
    """Gaussian mixture over trajectory modes with softmax(-J/alpha)
    weights. A single component is drawn per control sequence."""
    def __init__(self, components, weights):
        self.components = components
        self.weights = np.asarray(weights, dtype=float)

    @property
    def horizon(self):
        return self.components[0].horizon

    def exploration_scale(self):
        return np.sum([w * c.exploration_scale()
                       for w, c in zip(self.weights, self.components)],
                      axis=0)

    def choose_component(self, rng):
        return int(rng.choice(len(self.components), p=self.weights))

    def sample_feedback(self, rng):
        return self.components[self.choose_component(rng)].sample_feedback(rng)


def build_gaussian_policy(bwd, alpha):
    return GaussianPolicy(bwd, alpha)


def build_qgaussian_policy(bwd, alpha, q, sigma_max=None):
    """Build the q-Gaussian policy from a backward pass.

    C_t is solved for every timestep with Vtilde_t. ``sigma_max``, when
    set, caps the scalar multiplier of Q_uu^-1.

    :param bwd: backward pass
    :type bwd: BackwardResult
    :param alpha: temperature
    :type alpha: float
    :param q: entropic index, 1 < q < 1 + 2/n_u
    :type q: float
    :param sigma_max: optional cap on the covariance multiplier
    :type sigma_max: float
    :rtype: QGaussianPolicy
    """
    n_u = bwd.n_u
    low_q, high_q = admissible_q_range(n_u)
    if not low_q < q < high_q:
        raise PolicyException('policy:build_qgaussian_policy',
                              'q=' + str(q) + ' not admissible for n_u='
                              + str(n_u))
    if np.any(bwd.Vtilde < 0.0):
        raise PolicyException('policy:build_qgaussian_policy',
                              'negative value estimate; costs must be '
                              'nonnegative')
    T = bwd.horizon
    C = np.empty(T)
    scales = np.empty(T)
    Sigma_q = np.empty_like(bwd.Quu_inv)
    denominator = n_u + 2.0 - n_u * q
    for t in range(T):
        C[t] = solve_normalization_constant(
            float(bwd.Vtilde[t]), alpha, q, n_u,
            log_Quu_inv_det=bwd.log_det_Quu_inv(t))
        scale = 2.0 * ((q - 1.0) * bwd.Vtilde[t] + C[t] * alpha) / denominator
        if sigma_max is not None:
            scale = min(scale, sigma_max)
        scales[t] = scale
        Sigma_q[t] = scale * bwd.Quu_inv[t]
    return QGaussianPolicy(bwd.k, bwd.K, q, alpha, C, scales, Sigma_q)


def fuse_multimodal(bwds, trajs, alpha):
    """Mixture of per-mode Gaussian policies weighted by softmax(-J/alpha).

    :param bwds: backward passes, one per mode
    :param trajs: trajectories, one per mode
    :param alpha: temperature
    :rtype: MixturePolicy
    """
    costs = np.array([tr.cost for tr in trajs])
    weights = special.softmax(-costs / alpha)
    components = [build_gaussian_policy(b, alpha) for b in bwds]
    return MixturePolicy(components, weights)


def sample_control_sequence(policy, base, dyn, cost, rng,
                            retries=DEFAULT_SAMPLE_RETRIES, noiseless=False):
    """Closed-loop resampling of a control sequence around ``base``.

    u_t = ubar_t + k_t + K_t (x_t - xbar_t) + eta_t with eta drawn from the
    policy. A diverging rollout is redrawn up to ``retries`` times, after
    which a copy of ``base`` is returned.

    :param policy: exploration policy built on ``base``
    :param base: reference trajectory
    :type base: Trajectory
    :param rng: random source owned by the caller
    :type rng: numpy.random.Generator
    :param noiseless: force eta = 0
    :type noiseless: bool
    :rtype: Trajectory
    """
    for attempt in range(retries + 1):
        k, K, eta = policy.sample_feedback(rng)
        if noiseless:
            eta = None
        try:
            return rollout_feedback(dyn, cost, base, k, K, step=1.0,
                                    noise=eta)
        except RolloutDivergenceException as e:
            logger.debug('Sampled rollout diverged at t=%s (attempt %d)',
                         e.timestep, attempt + 1)
    logger.warning('Sampling failed after %d retries, keeping reference',
                   retries)
    return base.copy()
