"""ddp.py: Gauss-Newton DDP backward pass, closed-loop rollout and line
   search."""

import logging

import numpy as np
from scipy import linalg

from meddpy.trajectory import (RolloutDivergenceException, Trajectory)

logger = logging.getLogger(__name__)

DEFAULT_LINE_SEARCH_STEPS = 11


class RegularizationException(Exception):
    """Q_uu is not positive definite at the current regularization.

    The smallest eigenvalue found is available as ``min_eigenvalue``.
    """
    def __init__(self, source, message, min_eigenvalue=None, timestep=None):
        Exception.__init__(self, source, message)
        self.min_eigenvalue = min_eigenvalue
        self.timestep = timestep


def default_schedule(steps=DEFAULT_LINE_SEARCH_STEPS):
    """Step sizes 1, 1/2, 1/4, ..., 2^-(steps-1)."""
    return [2.0 ** -i for i in range(steps)]


class BackwardResult:
    """Gains and local expansions from one backward pass.

    Per-timestep arrays are indexed by t in [0, T-1]; ``Vx`` and ``Vxx``
    hold T+1 entries including the terminal expansion. ``Vtilde`` is the
    nominal cost-to-go from each timestep.
    """
    def __init__(self, k, K, Qu, Quu, Quu_inv, Vtilde, Vx, Vxx, reg,
                 dV1, dV2):
        self.k = k
        self.K = K
        self.Qu = Qu
        self.Quu = Quu
        self.Quu_inv = Quu_inv
        self.Vtilde = Vtilde
        self.Vx = Vx
        self.Vxx = Vxx
        self.reg = reg
        self.dV1 = dV1
        self.dV2 = dV2

    @property
    def horizon(self):
        return self.k.shape[0]

    @property
    def n_u(self):
        return self.k.shape[1]

    def expected_reduction(self, step=1.0):
        """Change in cost predicted by the local quadratic model."""
        return step * self.dV1 + step ** 2 * self.dV2

    def log_det_Quu_inv(self, t):
        """log |Q_uu^-1| at timestep t from the Cholesky factor of Q_uu."""
        try:
            chol = linalg.cholesky(self.Quu[t], lower=True)
        except linalg.LinAlgError:
            min_eig = float(np.linalg.eigvalsh(self.Quu[t])[0])
            raise RegularizationException('BackwardResult:log_det_Quu_inv',
                                          'Q_uu not positive definite at t='
                                          + str(t), min_eigenvalue=min_eig,
                                          timestep=t)
        return -2.0 * float(np.sum(np.log(np.diag(chol))))


def backward_pass(traj, dyn, cost, reg=0.0):
    """Run the DDP recursion from t = T-1 down to 0.

    Dynamics second derivatives are dropped. ``reg`` is added to the
    diagonal of every Q_uu.

    :param traj: nominal trajectory
    :type traj: Trajectory
    :param dyn: dynamics
    :type dyn: DynamicsModel
    :param cost: cost
    :type cost: CostModel
    :param reg: Levenberg-Marquardt term
    :type reg: float
    :rtype: BackwardResult
    """
    T = traj.horizon
    n_x, n_u = dyn.n_x, dyn.n_u
    k = np.zeros((T, n_u))
    K = np.zeros((T, n_u, n_x))
    Qu_all = np.zeros((T, n_u))
    Quu_all = np.zeros((T, n_u, n_u))
    Quu_inv_all = np.zeros((T, n_u, n_u))
    Vx_all = np.zeros((T + 1, n_x))
    Vxx_all = np.zeros((T + 1, n_x, n_x))
    dV1 = 0.0
    dV2 = 0.0

    Vx, Vxx = cost.terminal_derivatives(traj.X[T])
    Vxx = 0.5 * (Vxx + Vxx.T)
    Vx_all[T], Vxx_all[T] = Vx, Vxx
    eye = np.eye(n_u)

    for t in range(T - 1, -1, -1):
        x, u = traj.X[t], traj.U[t]
        fx, fu = dyn.jacobians(x, u)
        lx, lu, lxx, luu, lux = cost.running_derivatives(x, u, t)

        Qx = lx + fx.T @ Vx
        Qu = lu + fu.T @ Vx
        Qxx = lxx + fx.T @ Vxx @ fx
        Quu = luu + fu.T @ Vxx @ fu + reg * eye
        Qux = lux + fu.T @ Vxx @ fx
        Quu = 0.5 * (Quu + Quu.T)

        try:
            factor = linalg.cho_factor(Quu, lower=True)
        except linalg.LinAlgError:
            min_eig = float(np.linalg.eigvalsh(Quu)[0])
            raise RegularizationException('ddp:backward_pass',
                                          'Q_uu not positive definite at t='
                                          + str(t) + ' (min eigenvalue '
                                          + str(min_eig) + ')',
                                          min_eigenvalue=min_eig,
                                          timestep=t)
        Quu_inv = linalg.cho_solve(factor, eye)
        Quu_inv = 0.5 * (Quu_inv + Quu_inv.T)
        k_t = -linalg.cho_solve(factor, Qu)
        K_t = -linalg.cho_solve(factor, Qux)

        Vx = Qx + K_t.T @ Quu @ k_t + K_t.T @ Qu + Qux.T @ k_t
        Vxx = Qxx + K_t.T @ Quu @ K_t + K_t.T @ Qux + Qux.T @ K_t
        Vxx = 0.5 * (Vxx + Vxx.T)

        dV1 += float(k_t @ Qu)
        dV2 += 0.5 * float(k_t @ Quu @ k_t)

        k[t], K[t] = k_t, K_t
        Qu_all[t], Quu_all[t], Quu_inv_all[t] = Qu, Quu, Quu_inv
        Vx_all[t], Vxx_all[t] = Vx, Vxx

    Vtilde = traj.cost_to_go()[:T]
    return BackwardResult(k, K, Qu_all, Quu_all, Quu_inv_all, Vtilde,
                          Vx_all, Vxx_all, reg, dV1, dV2)


def rollout_feedback(dyn, cost, base, k, K, step=1.0, noise=None):
    """Closed-loop rollout around a nominal trajectory.

    u_t = ubar_t + step * k_t + K_t (x_t - xbar_t) + noise_t, starting from
    the nominal initial state.

    :param base: nominal trajectory (xbar, ubar)
    :type base: Trajectory
    :param noise: optional additive control perturbations, T x n_u
    :rtype: Trajectory
    """
    T = base.horizon
    X = np.empty_like(base.X)
    U = np.empty_like(base.U)
    stage_costs = np.empty(T + 1)
    X[0] = base.X[0]
    for t in range(T):
        u = base.U[t] + step * k[t] + K[t] @ (X[t] - base.X[t])
        if noise is not None:
            u = u + noise[t]
        U[t] = u
        stage_costs[t] = cost.running(X[t], u, t)
        X[t + 1] = dyn.step(X[t], u)
        if not (np.all(np.isfinite(X[t + 1]))
                and np.isfinite(stage_costs[t])):
            raise RolloutDivergenceException('ddp:rollout_feedback',
                                             'non-finite state at step '
                                             + str(t + 1), timestep=t + 1)
    stage_costs[T] = cost.terminal(X[T])
    if not np.isfinite(stage_costs[T]):
        raise RolloutDivergenceException('ddp:rollout_feedback',
                                         'non-finite terminal cost',
                                         timestep=T)
    return Trajectory(X, U, stage_costs)


class LineSearchResult:
    def __init__(self, trajectory, step_size, improved):
        self.trajectory = trajectory
        self.step_size = step_size
        self.improved = improved


def forward_line_search(traj, gains, dyn, cost, schedule=None):
    """Backtracking line search on the feedforward step size.

    The first candidate whose cost is strictly below ``traj.cost`` is
    accepted. When none is, the input trajectory is returned with
    ``improved`` set to False.

    :param traj: nominal trajectory the gains were computed on
    :type traj: Trajectory
    :param gains: result of backward_pass on ``traj``
    :type gains: BackwardResult
    :param schedule: step sizes to try in order
    :type schedule: list
    :rtype: LineSearchResult
    """
    if schedule is None:
        schedule = default_schedule()
    for step in schedule:
        try:
            candidate = rollout_feedback(dyn, cost, traj, gains.k, gains.K,
                                         step=step)
        except RolloutDivergenceException as e:
            logger.debug('Line search step %g diverged at t=%s', step,
                         e.timestep)
            continue
        if candidate.cost < traj.cost:
            return LineSearchResult(candidate, step, True)
    return LineSearchResult(traj, 0.0, False)
