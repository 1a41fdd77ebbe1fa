"""exploration_recorder.py: A recorder for the exploration covariance scale.

At every sampling event the policy's per-timestep multiplier of Q_uu^-1 is
recorded: alpha for a Gaussian policy and
2[(q-1) Vtilde_t + C_t alpha] / (n_u + 2 - n_u q) for a q-Gaussian one.
"""

from meddpy.event_handlers.solver_recorder import SolverRecorder
from meddpy.trajectory import format_float


class ExplorationRecorder(SolverRecorder):
    def sampling_event(self, solver, iteration, policy, trajectories):
        self.records.append((iteration, policy.exploration_scale()))

    def get_csv_header(self):
        return 'iteration,t,scale\n'

    def format_record(self, record):
        iteration, scales = record
        return [[str(iteration), str(t), format_float(s)]
                for t, s in enumerate(scales)]
