"""experiment.py: Seeded multi-trial experiments across algorithms."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import yaml

from meddpy.bench.artifacts import emit_artifacts
from meddpy.bench.scenario import Scenario
from meddpy.event_handlers.cost_evolution_recorder import CostEvolutionRecorder
from meddpy.solver import run
from meddpy.solver_config import ALGORITHMS, ConfigException, SolverConfig

logger = logging.getLogger(__name__)


class ExperimentSpec:
    """Everything needed to reproduce one experiment.

    Solver parameters are resolved in layers: SolverConfig defaults, the
    ``solver.defaults`` mapping, the ``solver.<algorithm>`` mapping and
    finally ``overrides`` (command-line values). Trial ``i`` uses seed
    ``seed + i`` for every algorithm.

    :param scenario: the ``scenario`` section
    :type scenario: dict
    :param algorithms: algorithm names to run
    :type algorithms: list
    :param solver: the ``solver`` section
    :type solver: dict
    :param trials: number of trials per algorithm
    :type trials: int
    :param seed: base seed
    :type seed: int
    :param out_dir: artifact directory, or None to skip writing
    :type out_dir: str
    :param jobs: worker processes
    :type jobs: int
    :param overrides: solver parameters applied to every algorithm
    :type overrides: dict
    """
    def __init__(self, scenario, algorithms, solver=None, trials=1, seed=0,
                 out_dir=None, jobs=1, overrides=None):
        self.scenario = dict(scenario)
        self.algorithms = list(algorithms)
        self.solver = dict(solver or {})
        self.trials = trials
        self.seed = seed
        self.out_dir = out_dir
        self.jobs = jobs
        self.overrides = dict(overrides or {})

    @classmethod
    def from_dict(cls, document, overrides=None, algorithms=None,
                  trials=None, seed=None, out_dir=None, jobs=None):
        """Build a spec from a parsed experiment file, keyword arguments
        taking precedence over the file."""
        if not isinstance(document, dict) or 'scenario' not in document:
            raise ConfigException('ExperimentSpec:from_dict',
                                  'missing scenario section',
                                  field='scenario')
        experiment = dict(document.get('experiment') or {})

        def pick(value, key, default):
            return value if value is not None else experiment.get(key, default)

        return cls(document['scenario'],
                   algorithms or experiment.get('algorithms',
                                                list(ALGORITHMS)),
                   solver=document.get('solver'),
                   trials=pick(trials, 'trials', 1),
                   seed=pick(seed, 'seed', 0),
                   out_dir=pick(out_dir, 'out', None),
                   jobs=pick(jobs, 'jobs', 1),
                   overrides=overrides)

    @classmethod
    def from_file(cls, path, **kwargs):
        with open(path) as f:
            document = yaml.safe_load(f)
        return cls.from_dict(document, **kwargs)

    def trial_seeds(self):
        return [self.seed + i for i in range(self.trials)]

    def solver_config(self, algorithm):
        values = dict(self.solver.get('defaults') or {})
        values.update(self.solver.get(algorithm) or {})
        values.update(self.overrides)
        values['algorithm'] = algorithm
        values.pop('seed', None)
        return SolverConfig.from_dict(values)

    def validate(self):
        """Check the whole experiment; return the built Scenario.

        :raises ConfigException: naming the offending field
        """
        if not self.algorithms:
            raise ConfigException('ExperimentSpec:validate',
                                  'no algorithm selected',
                                  field='experiment.algorithms')
        for name in self.solver:
            if name != 'defaults' and name not in ALGORITHMS:
                raise ConfigException('ExperimentSpec:validate',
                                      'unknown solver section',
                                      field='solver.' + str(name))
        if not (isinstance(self.trials, int) and self.trials >= 1):
            raise ConfigException('ExperimentSpec:validate',
                                  'trials must be a positive integer',
                                  field='experiment.trials')
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ConfigException('ExperimentSpec:validate',
                                  'seed must be a nonnegative integer',
                                  field='experiment.seed')
        if not (isinstance(self.jobs, int) and self.jobs >= 1):
            raise ConfigException('ExperimentSpec:validate',
                                  'jobs must be a positive integer',
                                  field='experiment.jobs')
        scenario = Scenario(self.scenario)
        for algorithm in self.algorithms:
            try:
                self.solver_config(algorithm).validate(scenario.dynamics.n_u)
            except ConfigException as e:
                raise ConfigException('ExperimentSpec:validate', e.args[1],
                                      field='solver.' + str(algorithm) + '.'
                                      + str(e.field))
        return scenario

    def resolved(self):
        """Resolved configuration echoed in the summary."""
        scenario = Scenario(self.scenario)
        solver = {}
        for algorithm in self.algorithms:
            values = self.solver_config(algorithm).to_dict()
            del values['seed']
            solver[algorithm] = values
        return {'scenario': scenario.to_dict(),
                'solver': solver,
                'experiment': {'algorithms': list(self.algorithms),
                               'trials': self.trials,
                               'seed': self.seed}}


class RunRecord:
    """Result of one (algorithm, trial) run.

    ``error`` is None for a successful run; otherwise the cost fields are
    None.
    """
    def __init__(self, algorithm, trial, seed, best_costs=None,
                 cost_history=None, final_cost=None, wall_time=0.0,
                 trajectory=None, error=None, cost_recorder=None):
        self.algorithm = algorithm
        self.trial = trial
        self.seed = seed
        self.best_costs = best_costs
        self.cost_history = cost_history
        self.final_cost = final_cost
        self.wall_time = wall_time
        self.trajectory = trajectory
        self.error = error
        self.cost_recorder = cost_recorder

    @property
    def failed(self):
        return self.error is not None


def run_trial(scenario_values, config_values, trial, seed):
    """Run one algorithm for one trial. Never raises on solver failure."""
    algorithm = config_values['algorithm']
    started = time.perf_counter()
    try:
        scenario = Scenario(scenario_values)
        config = SolverConfig.from_dict(config_values).replace(seed=seed)
        initial_controls = scenario.initial_controls(
            np.random.default_rng(seed))
        recorder = CostEvolutionRecorder()
        result = run(config, scenario.dynamics, scenario.cost, scenario.x0,
                     initial_controls, handlers=[recorder])
    except Exception as e:
        logger.warning('%s trial %d failed: %s', algorithm, trial, e)
        return RunRecord(algorithm, trial, seed,
                         wall_time=time.perf_counter() - started,
                         error=repr(e))
    wall_time = time.perf_counter() - started
    logger.info('%s trial %d: final cost %.10g (%.2fs)', algorithm, trial,
                result.best.cost, wall_time)
    return RunRecord(algorithm, trial, seed,
                     best_costs=result.best_cost_history,
                     cost_history=result.cost_history,
                     final_cost=result.best.cost, wall_time=wall_time,
                     trajectory=result.best, cost_recorder=recorder)


def _run_task(task):
    return run_trial(*task)


class ExperimentResult:
    def __init__(self, records, summary, scenario):
        self.records = records
        self.summary = summary
        self.scenario = scenario

    @property
    def all_failed(self):
        return all(r.failed for r in self.records)


def summarize(spec, records):
    """Per-algorithm statistics of the final costs.

    When ``ddp`` is part of the experiment, every other algorithm also
    reports the fraction of trials whose final cost is strictly below the
    ddp cost of the same trial.
    """
    by_trial = {}
    for r in records:
        by_trial[(r.algorithm, r.trial)] = r
    results = {}
    for algorithm in spec.algorithms:
        runs = [by_trial[(algorithm, i)] for i in range(spec.trials)]
        finals = [r.final_cost for r in runs]
        ok = np.array([c for c in finals if c is not None], dtype=float)
        entry = {
            'trials': spec.trials,
            'failed': sum(1 for r in runs if r.failed),
            'final_costs': finals,
            'mean': float(ok.mean()) if ok.size else None,
            'std': float(ok.std()) if ok.size else None,
            'min': float(ok.min()) if ok.size else None,
            'max': float(ok.max()) if ok.size else None,
        }
        if 'ddp' in spec.algorithms and algorithm != 'ddp':
            wins = 0
            for i, r in enumerate(runs):
                reference = by_trial[('ddp', i)].final_cost
                if (r.final_cost is not None and reference is not None
                        and r.final_cost < reference):
                    wins += 1
            entry['improved_over_ddp'] = wins / float(spec.trials)
        results[algorithm] = entry
    return results


def run_experiment(spec, emit=True):
    """Execute trials x algorithms runs and optionally write artifacts.

    :param spec: the experiment
    :type spec: ExperimentSpec
    :param emit: write artifacts when ``spec.out_dir`` is set
    :type emit: bool
    :rtype: ExperimentResult
    """
    scenario = spec.validate()
    scenario_values = scenario.to_dict()
    tasks = []
    for algorithm in spec.algorithms:
        config_values = spec.solver_config(algorithm).to_dict()
        for trial, seed in enumerate(spec.trial_seeds()):
            tasks.append((scenario_values, config_values, trial, seed))
    logger.info('Running %d algorithm(s) x %d trial(s) with %d job(s)',
                len(spec.algorithms), spec.trials, spec.jobs)
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            records = list(pool.map(_run_task, tasks))
    else:
        records = [_run_task(task) for task in tasks]
    result = ExperimentResult(records, summarize(spec, records), scenario)
    if emit and spec.out_dir is not None:
        emit_artifacts(spec, result)
    return result
