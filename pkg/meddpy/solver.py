"""solver.py: The multi-trajectory maximum-entropy DDP driver."""

import logging

import numpy as np

from meddpy.ddp import (RegularizationException, backward_pass,
                        default_schedule, forward_line_search)
from meddpy.policy import (build_gaussian_policy, build_qgaussian_policy,
                           fuse_multimodal, sample_control_sequence)
from meddpy.solver_config import ConfigException, SolverConfig
from meddpy.trajectory import rollout

logger = logging.getLogger(__name__)


class SolveResult:
    """Outcome of a solver run.

    :ivar best: lowest-cost trajectory after the last iteration
    :ivar cost_history: N x I matrix of mode costs after every iteration
    :ivar final_costs: cost of every mode after the last iteration
    """
    def __init__(self, best, cost_history, final_costs, trajectories):
        self.best = best
        self.cost_history = cost_history
        self.final_costs = final_costs
        self.trajectories = trajectories

    @property
    def best_cost_history(self):
        return np.min(self.cost_history, axis=0)


class MEDDPSolver:
    """Optimizes N trajectory modes with periodic maximum-entropy
    resampling.

    Every ``sample_every`` iterations the lowest-cost mode is moved to
    slot 0 and kept, a policy is built from it (per ``config.algorithm``)
    and modes 1..N-1 are resampled from that policy. Every iteration, each
    mode runs a backward pass and a line search. With algorithm ``ddp``
    there is a single mode and no sampling.

    Handlers attached to ``handlers`` receive the solver events.

    :param config: solver parameters
    :type config: SolverConfig
    :param dynamics: system dynamics
    :type dynamics: DynamicsModel
    :param cost: cost model
    :type cost: CostModel
    """
    def __init__(self, config, dynamics, cost):
        self.config = config.validate(dynamics.n_u)
        self.dynamics = dynamics
        self.cost = cost
        self.handlers = []
        self.schedule = default_schedule(config.line_search_steps)
        self.trajectories = []
        self.regs = []
        self.rngs = []

    def before_iteration(self, iteration):
        for x in self.handlers:
            x.before_iteration(self, iteration)

    def sampling_event(self, iteration, policy):
        for x in self.handlers:
            x.sampling_event(self, iteration, policy, self.trajectories)

    def mode_failure_event(self, iteration, mode, exception):
        for x in self.handlers:
            x.mode_failure_event(self, iteration, mode, exception)

    def iteration_event(self, iteration, costs):
        for x in self.handlers:
            x.iteration_event(self, iteration, self.trajectories, costs)

    def solve_done(self, result):
        for x in self.handlers:
            x.solve_done(self, result)

    def initial_sequences(self, initial_controls):
        n_modes = self.config.effective_modes
        initial_controls = np.asarray(initial_controls, dtype=float)
        if initial_controls.ndim == 2:
            return [initial_controls.copy() for _ in range(n_modes)]
        if initial_controls.ndim != 3 or initial_controls.shape[0] < n_modes:
            raise ConfigException('MEDDPSolver:initial_sequences',
                                  'expected one control sequence or '
                                  + str(n_modes) + ' of them',
                                  field='initial_controls')
        return [u.copy() for u in initial_controls[:n_modes]]

    def backward(self, mode):
        """Backward pass of one mode, raising its regularization until Q_uu
        is positive definite. Returns None once reg_max is exceeded."""
        cfg = self.config
        while True:
            try:
                return backward_pass(self.trajectories[mode], self.dynamics,
                                     self.cost, self.regs[mode])
            except RegularizationException as e:
                if self.regs[mode] >= cfg.reg_max:
                    self.last_failure = e
                    return None
                self.regs[mode] = min(self.regs[mode] * cfg.reg_increase,
                                      cfg.reg_max)

    def build_policy(self):
        algorithm = self.config.algorithm
        if algorithm == 'me_shannon_multi':
            bwds = [self.backward(i) for i in range(len(self.trajectories))]
            pairs = [(b, tr) for b, tr in zip(bwds, self.trajectories)
                     if b is not None]
            if not pairs:
                return None
            return fuse_multimodal([b for b, _ in pairs],
                                   [tr for _, tr in pairs], self.config.alpha)
        bwd = self.backward(0)
        if bwd is None:
            return None
        if algorithm == 'me_shannon_uni':
            return build_gaussian_policy(bwd, self.config.alpha)
        return build_qgaussian_policy(bwd, self.config.alpha, self.config.q,
                                      sigma_max=self.config.sigma_max)

    def resample(self, iteration):
        best = int(np.argmin([tr.cost for tr in self.trajectories]))
        if best != 0:
            self.trajectories[0], self.trajectories[best] = \
                self.trajectories[best], self.trajectories[0]
            self.regs[0], self.regs[best] = self.regs[best], self.regs[0]
        policy = self.build_policy()
        if policy is None:
            logger.warning('Iteration %d: no policy could be built, '
                           'skipping sampling', iteration)
            return
        base = self.trajectories[0]
        for n in range(1, len(self.trajectories)):
            self.trajectories[n] = sample_control_sequence(
                policy, base, self.dynamics, self.cost, self.rngs[n],
                retries=self.config.sample_retries)
            self.regs[n] = self.config.reg_init
        logger.info('Iteration %d: resampled %d modes around cost %.6g',
                    iteration, len(self.trajectories) - 1, base.cost)
        self.sampling_event(iteration, policy)

    def improve(self, iteration, mode):
        cfg = self.config
        bwd = self.backward(mode)
        if bwd is None:
            logger.warning('Iteration %d: mode %d backward pass failed, '
                           'keeping its trajectory', iteration, mode)
            self.mode_failure_event(iteration, mode, self.last_failure)
            return
        result = forward_line_search(self.trajectories[mode], bwd,
                                     self.dynamics, self.cost, self.schedule)
        if result.improved:
            self.trajectories[mode] = result.trajectory
            self.regs[mode] = max(self.regs[mode] / cfg.reg_decrease,
                                  cfg.reg_min)
        else:
            self.regs[mode] = min(self.regs[mode] * cfg.reg_increase,
                                  cfg.reg_max)

    def solve(self, x0, initial_controls):
        """Run the optimization.

        :param x0: initial state
        :param initial_controls: one T x n_u sequence shared by every mode,
                                 or an N x T x n_u array
        :rtype: SolveResult
        """
        cfg = self.config
        x0 = np.asarray(x0, dtype=float)
        sequences = self.initial_sequences(initial_controls)
        n_modes = len(sequences)
        seeds = np.random.SeedSequence(cfg.seed).spawn(n_modes)
        self.rngs = [np.random.default_rng(s) for s in seeds]
        self.trajectories = [rollout(self.dynamics, self.cost, x0, u)
                             for u in sequences]
        self.regs = [cfg.reg_init] * n_modes
        self.last_failure = None
        cost_history = np.empty((n_modes, cfg.max_iter))
        sampling = cfg.algorithm != 'ddp' and n_modes > 1

        for iteration in range(cfg.max_iter):
            self.before_iteration(iteration)
            if sampling and iteration % cfg.sample_every == 0:
                self.resample(iteration)
            for mode in range(n_modes):
                self.improve(iteration, mode)
            costs = np.array([tr.cost for tr in self.trajectories])
            cost_history[:, iteration] = costs
            logger.debug('Iteration %d: best cost %.10g', iteration,
                         costs.min())
            self.iteration_event(iteration, costs)

        final_costs = cost_history[:, -1].copy()
        best = self.trajectories[int(np.argmin(final_costs))]
        result = SolveResult(best, cost_history, final_costs,
                             list(self.trajectories))
        self.solve_done(result)
        return result


def run(config, system, cost, x0, initial_controls, handlers=None):
    """Build a solver, attach ``handlers`` and solve.

    :rtype: SolveResult
    """
    solver = MEDDPSolver(config, system, cost)
    if handlers:
        solver.handlers.extend(handlers)
    return solver.solve(x0, initial_controls)
