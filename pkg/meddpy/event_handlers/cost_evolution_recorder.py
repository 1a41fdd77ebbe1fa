"""cost_evolution_recorder.py: A recorder for mode costs per iteration."""

import numpy as np

from meddpy.event_handlers.solver_recorder import SolverRecorder
from meddpy.trajectory import format_float


class CostEvolutionRecorder(SolverRecorder):
    """One record per iteration: (iteration, cost of every mode)."""
    def iteration_event(self, solver, iteration, trajectories, costs):
        self.records.append((iteration, np.array(costs, dtype=float)))

    @property
    def n_modes(self):
        if not self.records:
            return 0
        return len(self.records[0][1])

    def best_costs(self):
        return np.array([costs.min() for _, costs in self.records])

    def get_csv_header(self):
        columns = ['iteration']
        columns += ['mode_' + str(i) for i in range(self.n_modes)]
        columns.append('best')
        return ','.join(columns) + '\n'

    def format_record(self, record):
        iteration, costs = record
        row = [str(iteration)] + [format_float(c) for c in costs]
        row.append(format_float(costs.min()))
        return [row]
