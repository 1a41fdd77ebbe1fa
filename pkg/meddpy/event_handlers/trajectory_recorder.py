"""trajectory_recorder.py: A recorder for the best trajectory."""

from meddpy.event_handlers.solver_recorder import SolverRecorder


class TrajectoryRecorder(SolverRecorder):
    """Records the best trajectory at the end of the solve, or after every
    ``every`` iterations when ``every`` is set."""
    def __init__(self, every=None):
        self.every = every
        self.state_names = None
        self.control_names = None
        SolverRecorder.__init__(self)

    def iteration_event(self, solver, iteration, trajectories, costs):
        if self.every is not None and iteration % self.every == 0:
            best = min(trajectories, key=lambda tr: tr.cost)
            self.records.append((iteration, best.copy()))

    def solve_done(self, solver, result):
        self.state_names = solver.dynamics.get_state_names()
        self.control_names = solver.dynamics.get_control_names()
        if self.every is None:
            self.records.append((None, result.best))

    def write_csv(self, outfile):
        """Write the last recorded trajectory."""
        iteration, trajectory = self.records[-1]
        trajectory.write_csv(outfile, self.state_names, self.control_names)
