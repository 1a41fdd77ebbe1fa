"""qgauss.py: Univariate and multivariate q-Gaussian distributions."""

import math

import numpy as np
from scipy import linalg

from meddpy.tsallis_math import is_unit_branch, log_beta_fn, log_gamma_fn

DEFINED = 'defined'
UNDEFINED = 'undefined'
FINITE = 'finite'
INFINITE = 'infinite'


class InvalidDistributionException(Exception):
    pass


class QGaussian1D:
    """A univariate q-Gaussian with q-mean mu_q and q-variance sigma2_q.

    Valid for q < 3. For q < 1 the density has compact support
    [mu_q - a_q sigma_q, mu_q + a_q sigma_q] with a_q = sqrt((3-q)/(1-q)).

    :param q: entropic index
    :type q: float
    :param mu_q: q-mean
    :type mu_q: float
    :param sigma2_q: q-variance
    :type sigma2_q: float
    """
    def __init__(self, q, mu_q=0.0, sigma2_q=1.0):
        if not q < 3.0:
            raise InvalidDistributionException('QGaussian1D:__init__',
                                               'q must be below 3, got '
                                               + str(q))
        if not sigma2_q > 0.0:
            raise InvalidDistributionException('QGaussian1D:__init__',
                                               'sigma2_q must be positive')
        self.q = float(q)
        self.mu_q = float(mu_q)
        self.sigma2_q = float(sigma2_q)

    def support(self):
        """Return the (lower, upper) bounds of the support."""
        if self.q < 1.0 and not is_unit_branch(self.q):
            half_width = math.sqrt((3.0 - self.q) / (1.0 - self.q)
                                   * self.sigma2_q)
            return self.mu_q - half_width, self.mu_q + half_width
        return -math.inf, math.inf

    def log_partition(self):
        q = self.q
        if is_unit_branch(q):
            return 0.5 * math.log(2.0 * math.pi * self.sigma2_q)
        if q > 1.0:
            return (0.5 * math.log(self.sigma2_q * (3.0 - q) / (q - 1.0))
                    + log_beta_fn(0.5, (3.0 - q) / (2.0 * (q - 1.0))))
        return (0.5 * math.log(self.sigma2_q * (3.0 - q) / (1.0 - q))
                + log_beta_fn(0.5, (2.0 - q) / (1.0 - q)))

    def partition(self):
        return math.exp(self.log_partition())

    def log_pdf(self, x):
        q = self.q
        z2 = (np.asarray(x, dtype=float) - self.mu_q) ** 2 / self.sigma2_q
        log_z = self.log_partition()
        if is_unit_branch(q):
            return -0.5 * z2 - log_z
        if q > 1.0:
            return -np.log1p((q - 1.0) / (3.0 - q) * z2) / (q - 1.0) - log_z
        arg = (1.0 - q) / (3.0 - q) * z2
        inside = arg < 1.0
        with np.errstate(divide='ignore', invalid='ignore'):
            values = np.log1p(-np.where(inside, arg, 0.0)) / (1.0 - q) - log_z
        return np.where(inside, values, -np.inf)

    def pdf(self, x):
        values = np.exp(self.log_pdf(x))
        if values.ndim == 0:
            return float(values)
        return values


class QGaussianND:
    """A multivariate q-Gaussian with 1 < q < 1 + 2/n.

    :param q: entropic index
    :type q: float
    :param mu_q: q-mean, length n
    :type mu_q: array_like
    :param Sigma_q: symmetric positive-definite q-covariance, n x n
    :type Sigma_q: array_like
    """
    def __init__(self, q, mu_q, Sigma_q):
        mu_q = np.atleast_1d(np.asarray(mu_q, dtype=float))
        Sigma_q = np.atleast_2d(np.asarray(Sigma_q, dtype=float))
        n = mu_q.shape[0]
        if mu_q.ndim != 1 or Sigma_q.shape != (n, n):
            raise InvalidDistributionException('QGaussianND:__init__',
                                               'Sigma_q must be ' + str(n)
                                               + 'x' + str(n))
        if not 1.0 < q < 1.0 + 2.0 / n:
            raise InvalidDistributionException('QGaussianND:__init__',
                                               'q must satisfy 1 < q < '
                                               + str(1.0 + 2.0 / n)
                                               + ', got ' + str(q))
        scale = max(1.0, float(np.max(np.abs(Sigma_q))))
        if np.max(np.abs(Sigma_q - Sigma_q.T)) > 1e-12 * scale:
            raise InvalidDistributionException('QGaussianND:__init__',
                                               'Sigma_q is not symmetric')
        try:
            self.chol = linalg.cholesky(Sigma_q, lower=True)
        except linalg.LinAlgError:
            raise InvalidDistributionException('QGaussianND:__init__',
                                               'Sigma_q is not positive '
                                               'definite')
        self.q = float(q)
        self.n = n
        self.mu_q = mu_q
        self.Sigma_q = Sigma_q

    @property
    def nu(self):
        """Degrees of freedom of the equivalent Student's t."""
        return (self.n + 2.0 - self.n * self.q) / (self.q - 1.0)

    def log_det(self):
        return 2.0 * float(np.sum(np.log(np.diag(self.chol))))

    def log_partition(self):
        n = self.n
        s = 1.0 / (self.q - 1.0)
        return (0.5 * n * math.log(self.nu) + 0.5 * self.log_det()
                + 0.5 * n * math.log(math.pi)
                + log_gamma_fn(s - 0.5 * n) - log_gamma_fn(s))

    def partition(self):
        return math.exp(self.log_partition())

    def escort_normalizer(self):
        """Closed form of the integral of p(x)^q over R^n."""
        n = self.n
        return ((n + 2.0 - n * self.q) / 2.0
                * math.exp((1.0 - self.q) * self.log_partition()))

    def mahalanobis2(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise InvalidDistributionException('QGaussianND:mahalanobis2',
                                               'expected vectors of length '
                                               + str(self.n) + ', got '
                                               + str(x.shape[-1]))
        diff = np.atleast_2d(x - self.mu_q)
        white = linalg.solve_triangular(self.chol, diff.T, lower=True)
        r2 = np.sum(white ** 2, axis=0)
        if x.ndim == 1:
            return float(r2[0])
        return r2

    def log_pdf(self, x):
        r2 = self.mahalanobis2(x)
        return -np.log1p(r2 / self.nu) / (self.q - 1.0) - self.log_partition()

    def pdf(self, x):
        values = np.exp(self.log_pdf(x))
        if np.ndim(values) == 0:
            return float(values)
        return values


class MomentReport:
    """Ordinary mean and covariance of a q-Gaussian, where they exist.

    ``mean`` and ``covariance`` are None unless their status is DEFINED or
    FINITE respectively.
    """
    def __init__(self, mean_status, mean, covariance_status, covariance):
        self.mean_status = mean_status
        self.mean = mean
        self.covariance_status = covariance_status
        self.covariance = covariance

    def __repr__(self):
        return ('MomentReport(mean=' + self.mean_status + ', covariance='
                + self.covariance_status + ')')


def pdf_1d(dist, x):
    """Density of a univariate q-Gaussian, exactly 0 outside the support."""
    return dist.pdf(x)


def pdf_nd(dist, x):
    """Density of a multivariate q-Gaussian at one point or a batch of rows.

    :param dist: distribution
    :type dist: QGaussianND
    :param x: vector of length n or m x n matrix
    :type x: numpy.ndarray
    """
    return dist.pdf(x)


def to_student_t(dist):
    """Express a q-Gaussian (q > 1) as a multivariate Student's t.

    :returns: (nu, mu_t, Sigma_t)
    """
    n, q = dist.n, dist.q
    if not 1.0 < q < 1.0 + 2.0 / n:
        raise InvalidDistributionException('qgauss:to_student_t',
                                           'q out of range')
    nu = (n + 2.0 - n * q) / (q - 1.0)
    Sigma_t = (nu * (q - 1.0) / (n + 2.0 - n * q)) * dist.Sigma_q
    return nu, dist.mu_q.copy(), Sigma_t


def escort_transform(dist):
    """Escort distribution p^q / C of a q-Gaussian, itself a q-Gaussian with
    q' = 2 - 1/q. For every valid input 1 < q' < 1 + 2/(n+2).
    """
    n, q = dist.n, dist.q
    if not 1.0 < q < 1.0 + 2.0 / n:
        raise InvalidDistributionException('qgauss:escort_transform',
                                           'q out of range for n='
                                           + str(n))
    q_escort = 2.0 - 1.0 / q
    factor = (n + 2.0 - n * q) / (n + (2.0 - n) * q)
    return QGaussianND(q_escort, dist.mu_q.copy(), factor * dist.Sigma_q)


def sample(dist, rng, count):
    """Draw i.i.d. samples through the Student's t representation.

    :param dist: distribution to sample
    :type dist: QGaussianND
    :param rng: random source
    :type rng: numpy.random.Generator
    :param count: number of draws
    :type count: int
    :returns: count x n matrix
    """
    if count < 1:
        raise InvalidDistributionException('qgauss:sample',
                                           'count must be at least 1')
    nu, mu_t, Sigma_t = to_student_t(dist)
    if not nu > 0:
        raise InvalidDistributionException('qgauss:sample',
                                           'degrees of freedom must be '
                                           'positive')
    try:
        chol = linalg.cholesky(Sigma_t, lower=True)
    except linalg.LinAlgError:
        raise InvalidDistributionException('qgauss:sample',
                                           'Sigma_t is not positive definite')
    z = rng.standard_normal((count, dist.n))
    w = rng.chisquare(nu, size=count)
    return mu_t + (z @ chol.T) * np.sqrt(nu / w)[:, None]


def moments_1d(dist):
    q = dist.q
    if q < 2.0:
        mean_status, mean = DEFINED, dist.mu_q
    else:
        return MomentReport(UNDEFINED, None, UNDEFINED, None)
    if q < 5.0 / 3.0:
        variance = (3.0 - q) / (5.0 - 3.0 * q) * dist.sigma2_q
        return MomentReport(mean_status, mean, FINITE, variance)
    return MomentReport(mean_status, mean, INFINITE, None)


def moments(dist):
    """Classify (and compute where finite) the ordinary mean and covariance.

    Univariate distributions follow the univariate table, which also covers
    q < 1.

    :rtype: MomentReport
    """
    if isinstance(dist, QGaussian1D):
        return moments_1d(dist)
    n, q = dist.n, dist.q
    if q >= 1.0 + 2.0 / (n + 1.0):
        return MomentReport(UNDEFINED, None, UNDEFINED, None)
    mean = dist.mu_q.copy()
    if q >= 1.0 + 2.0 / (n + 2.0):
        return MomentReport(DEFINED, mean, INFINITE, None)
    factor = (n + 2.0 - n * q) / (n + 4.0 - (n + 2.0) * q)
    return MomentReport(DEFINED, mean, FINITE, factor * dist.Sigma_q)
