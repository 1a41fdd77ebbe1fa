"""trajectory.py: State/control sequences and open-loop rollout."""

import numpy as np

FLOAT_FORMAT = '.17g'


class RolloutDivergenceException(Exception):
    """Raised when a rollout produces a non-finite state or cost.

    The offending step is available as ``timestep``.
    """
    def __init__(self, source, message, timestep=None):
        Exception.__init__(self, source, message)
        self.timestep = timestep


def format_float(value):
    return format(float(value), FLOAT_FORMAT)


class Trajectory:
    """A rolled-out trajectory.

    :param X: states x_0..x_T, shape (T+1) x n_x
    :type X: numpy.ndarray
    :param U: controls u_0..u_{T-1}, shape T x n_u
    :type U: numpy.ndarray
    :param stage_costs: running costs l_0..l_{T-1} followed by the
                        terminal cost, length T+1
    :type stage_costs: numpy.ndarray
    """
    def __init__(self, X, U, stage_costs):
        self.X = X
        self.U = U
        self.stage_costs = stage_costs
        self.cost = float(np.sum(stage_costs))

    @property
    def horizon(self):
        return self.U.shape[0]

    def cost_to_go(self):
        """Nominal cost-to-go from every timestep, length T+1."""
        return np.cumsum(self.stage_costs[::-1])[::-1]

    def copy(self):
        return Trajectory(self.X.copy(), self.U.copy(),
                          self.stage_costs.copy())

    def get_csv_header(self, state_names, control_names):
        return ','.join(['t'] + list(state_names) + list(control_names)) + '\n'

    def write_csv(self, outfile, state_names=None, control_names=None):
        """Write one row per timestep; controls are empty on the terminal
        row."""
        n_x, n_u = self.X.shape[1], self.U.shape[1]
        if state_names is None:
            state_names = ['x' + str(i) for i in range(n_x)]
        if control_names is None:
            control_names = ['u' + str(i) for i in range(n_u)]
        outfile.write(self.get_csv_header(state_names, control_names))
        T = self.horizon
        for t in range(T + 1):
            row = [str(t)] + [format_float(v) for v in self.X[t]]
            if t < T:
                row += [format_float(v) for v in self.U[t]]
            else:
                row += [''] * n_u
            outfile.write(','.join(row) + '\n')


def rollout(dyn, cost, x0, U):
    """Simulate the dynamics under an open-loop control sequence.

    :param dyn: dynamics
    :type dyn: DynamicsModel
    :param cost: cost
    :type cost: CostModel
    :param x0: initial state
    :param U: controls, T x n_u
    :rtype: Trajectory
    """
    U = np.array(U, dtype=float)
    T = U.shape[0]
    X = np.empty((T + 1, dyn.n_x))
    X[0] = x0
    stage_costs = np.empty(T + 1)
    for t in range(T):
        stage_costs[t] = cost.running(X[t], U[t], t)
        X[t + 1] = dyn.step(X[t], U[t])
        if not (np.all(np.isfinite(X[t + 1]))
                and np.isfinite(stage_costs[t])):
            raise RolloutDivergenceException('trajectory:rollout',
                                             'non-finite state at step '
                                             + str(t + 1), timestep=t + 1)
    stage_costs[T] = cost.terminal(X[T])
    if not np.isfinite(stage_costs[T]):
        raise RolloutDivergenceException('trajectory:rollout',
                                         'non-finite terminal cost',
                                         timestep=T)
    return Trajectory(X, U, stage_costs)
