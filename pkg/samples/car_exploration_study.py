"""Sample code running the car benchmark and recording exploration"""
import logging

import numpy as np

from meddpy.bench import ExperimentSpec, Scenario
from meddpy.event_handlers import (CostEvolutionRecorder,
                                   ExplorationRecorder, TrajectoryRecorder)
from meddpy.solver import run

logging.basicConfig(level=logging.INFO)

scenario_file = '../scenarios/car2d.yaml'

spec = ExperimentSpec.from_file(scenario_file)
scenario = Scenario(spec.scenario)

for algorithm in ['ddp', 'me_shannon_uni', 'me_tsallis']:
    config = spec.solver_config(algorithm).replace(seed=0)
    config.validate(scenario.dynamics.n_u)

    # Record the best cost of every iteration, the exploration scale of
    # every sampling step and the best trajectory every 20 iterations. The
    # trajectory CSV holds the last recorded one.
    cost_recorder = CostEvolutionRecorder()
    exploration_recorder = ExplorationRecorder()
    trajectory_recorder = TrajectoryRecorder(every=20)

    result = run(config, scenario.dynamics, scenario.cost, scenario.x0,
                 scenario.initial_controls(np.random.default_rng(0)),
                 handlers=[cost_recorder, exploration_recorder,
                           trajectory_recorder])
    print(algorithm, 'final cost', result.best.cost)

    with open(algorithm + '_costs.csv', 'w') as f:
        cost_recorder.write_csv(f)
    with open(algorithm + '_exploration.csv', 'w') as f:
        exploration_recorder.write_csv(f)
    with open(algorithm + '_trajectory.csv', 'w') as f:
        trajectory_recorder.write_csv(f)
