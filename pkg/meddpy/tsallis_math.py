"""tsallis_math.py: q-deformed algebra and the special functions used by
   the q-Gaussian partition functions."""

import math

import numpy as np
from scipy import special

# |q - 1| below this value selects the ordinary (q = 1) branch
BRANCH_TOL = 1e-8


class QDomainException(Exception):
    pass


class QExpPoleException(Exception):
    """Raised when exp_q diverges (q > 1 and 1 - (q - 1) x <= 0)."""
    pass


class QProductOverflowException(Exception):
    pass


def is_unit_branch(q):
    """True when q is treated as exactly 1."""
    return abs(q - 1.0) < BRANCH_TOL


def _as_output(values):
    values = np.asarray(values, dtype=float)
    if values.ndim == 0:
        return float(values)
    return values


def q_log(x, q):
    """q-logarithm ln_q(x) = (x^(1-q) - 1) / (1 - q).

    Reduces to the natural logarithm when q is within BRANCH_TOL of 1.
    Accepts scalars and numpy arrays.

    :param x: positive argument
    :type x: float or numpy.ndarray
    :param q: entropic index
    :type q: float
    :returns: ln_q(x)
    """
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise QDomainException('tsallis_math:q_log',
                               'q-logarithm is only defined for x > 0')
    if is_unit_branch(q):
        return _as_output(np.log(x))
    return _as_output((np.power(x, 1.0 - q) - 1.0) / (1.0 - q))


def q_exp(x, q):
    """q-exponential exp_q(x) = [1 - (q - 1) x]_+^(-1/(q-1)).

    For q < 1 the value is exactly 0 outside the support. For q > 1 the
    function has a pole at x = 1/(q - 1), and any argument at or beyond it
    raises QExpPoleException.

    :param x: argument
    :type x: float or numpy.ndarray
    :param q: entropic index
    :type q: float
    :returns: exp_q(x)
    """
    x = np.asarray(x, dtype=float)
    if is_unit_branch(q):
        return _as_output(np.exp(x))
    base = 1.0 - (q - 1.0) * x
    if q > 1.0:
        if np.any(base <= 0.0):
            raise QExpPoleException('tsallis_math:q_exp',
                                    'exp_q diverges for x >= 1/(q-1) = '
                                    + str(1.0 / (q - 1.0)))
        return _as_output(np.power(base, -1.0 / (q - 1.0)))
    clipped = np.maximum(base, 0.0)
    with np.errstate(divide='ignore'):
        return _as_output(np.where(base > 0.0,
                                   np.power(clipped, 1.0 / (1.0 - q)), 0.0))


def q_product(a, b, q):
    """q-product a (x)_q b = [a^(1-q) + b^(1-q) - 1]_+^(1/(1-q)).

    Satisfies exp_q(x) (x)_q exp_q(y) = exp_q(x + y) and reduces to a * b
    at q = 1. It does not distribute over addition.

    :param a: nonnegative factor
    :type a: float
    :param b: nonnegative factor
    :type b: float
    :param q: entropic index
    :type q: float
    :returns: the q-product
    :rtype: float
    """
    if a < 0 or b < 0:
        raise QDomainException('tsallis_math:q_product',
                               'q-product factors must be nonnegative')
    if is_unit_branch(q):
        return float(a) * float(b)
    if q > 1.0:
        if a == 0 or b == 0:
            return 0.0
        base = a ** (1.0 - q) + b ** (1.0 - q) - 1.0
        if base <= 0.0:
            raise QProductOverflowException('tsallis_math:q_product',
                                            'q-product diverges for a='
                                            + str(a) + ', b=' + str(b))
        return base ** (1.0 / (1.0 - q))
    base = a ** (1.0 - q) + b ** (1.0 - q) - 1.0
    if base <= 0.0:
        return 0.0
    return base ** (1.0 / (1.0 - q))


def gamma_fn(x):
    """Gamma function for positive real arguments."""
    if not x > 0:
        raise QDomainException('tsallis_math:gamma_fn',
                               'gamma_fn requires x > 0, got ' + str(x))
    return float(special.gamma(x))


def log_gamma_fn(x):
    if not x > 0:
        raise QDomainException('tsallis_math:log_gamma_fn',
                               'log_gamma_fn requires x > 0, got ' + str(x))
    return float(special.gammaln(x))


def log_beta_fn(a, b):
    """ln B(a, b) = ln G(a) + ln G(b) - ln G(a + b)."""
    if not (a > 0 and b > 0):
        raise QDomainException('tsallis_math:log_beta_fn',
                               'beta arguments must be positive')
    return log_gamma_fn(a) + log_gamma_fn(b) - log_gamma_fn(a + b)


def beta_fn(a, b):
    """Beta function evaluated through log-gamma to avoid overflow."""
    return math.exp(log_beta_fn(a, b))


def tsallis_entropy(p, q):
    """Tsallis entropy S_q = sum_i p_i ln_q(1 / p_i) of a discrete
    distribution.

    Zero-probability outcomes contribute nothing. The q = 1 branch is the
    Shannon entropy.

    :param p: probabilities, summing to one
    :type p: array_like
    :param q: entropic index
    :type q: float
    :rtype: float
    """
    p = np.asarray(p, dtype=float).ravel()
    if np.any(p < 0):
        raise QDomainException('tsallis_math:tsallis_entropy',
                               'probabilities must be nonnegative')
    support = p[p > 0]
    return float(np.sum(support * np.atleast_1d(q_log(1.0 / support, q))))
