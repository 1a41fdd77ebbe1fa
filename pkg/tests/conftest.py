import math

import numpy as np
import pytest
from scipy import integrate

from meddpy.models.car2d import Car2D
from meddpy.models.composite_cost import CompositeCost
from meddpy.models.linear import LinearDynamics
from meddpy.models.obstacles import ObstacleField

QUAD = {'epsabs': 0.0, 'epsrel': 1e-11, 'limit': 200}


def random_lqr(rng, n_x=None, n_u=None):
    """A random stabilizable LQR instance as (dynamics, cost, x0)."""
    n_x = n_x or int(rng.integers(1, 5))
    n_u = n_u or int(rng.integers(1, 3))
    A = np.eye(n_x) + 0.1 * rng.standard_normal((n_x, n_x))
    B = rng.standard_normal((n_x, n_u))
    M = rng.standard_normal((n_x, n_x))
    Q = 0.1 * M @ M.T + 0.01 * np.eye(n_x)
    N = rng.standard_normal((n_u, n_u))
    R = N @ N.T + 0.1 * np.eye(n_u)
    F = rng.standard_normal((n_x, n_x))
    Q_f = F @ F.T + np.eye(n_x)
    cost = CompositeCost(Q, R, Q_f, np.zeros(n_x))
    x0 = rng.standard_normal(n_x)
    return LinearDynamics(A, B), cost, x0


def riccati(dyn, cost, T):
    """Finite-horizon Riccati recursion; returns (gains, P_0)."""
    A, B = dyn.A, dyn.B
    P = cost.Q_f
    gains = [None] * T
    for t in range(T - 1, -1, -1):
        S = cost.R + B.T @ P @ B
        K = -np.linalg.solve(S, B.T @ P @ A)
        P = cost.Q_run + A.T @ P @ A + A.T @ P @ B @ K
        P = 0.5 * (P + P.T)
        gains[t] = K
    return gains, P


def radial_integral_2d(profile, decay):
    """Integral over the plane of a radial function whose values decay as
    r^-decay, decay > 2."""
    # r = t^-k maps the tail onto a bounded integrand over (0, 1)
    k = 1.0 / (decay - 2.0)

    def tail(t):
        r = t ** -k
        return 2.0 * math.pi * r * profile(r) * k * t ** (-k - 1.0)

    core = integrate.quad(lambda r: 2.0 * math.pi * r * profile(r), 0.0, 1.0,
                          **QUAD)[0]
    return core + integrate.quad(tail, 0.0, 1.0, **QUAD)[0]


@pytest.fixture
def car_problem():
    """Short car problem with two obstacles off the straight path."""
    dyn = Car2D(dt=0.05)
    field = ObstacleField.from_dicts(
        [{'center': [0.8, 0.3], 'radius': 0.2, 'weight': 2.0},
         {'center': [1.4, -0.2], 'radius': 0.2, 'weight': 2.0}],
        dyn.selection_matrix())
    cost = CompositeCost(np.diag([0.1, 0.1, 0.0]), np.diag([0.05, 0.05]),
                         np.diag([100.0, 100.0, 1.0]),
                         np.array([2.0, 0.0, 0.0]), field)
    x0 = np.zeros(3)
    U = np.tile([1.0, 0.3], (40, 1))
    return dyn, cost, x0, U
