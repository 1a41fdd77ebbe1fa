"""solver_event_handler.py: Base class for solver event handlers."""


class SolverEventHandler:
    """A handler for solver events.

    The solver calls every attached handler on each event. All hooks are
    no-ops here; recorders override the ones they need.
    """
    def before_iteration(self, solver, iteration):
        pass

    def sampling_event(self, solver, iteration, policy, trajectories):
        """Modes 1..N-1 were just resampled from ``policy``."""
        pass

    def mode_failure_event(self, solver, iteration, mode, exception):
        pass

    def iteration_event(self, solver, iteration, trajectories, costs):
        pass

    def solve_done(self, solver, result):
        pass
