"""artifacts.py: Writes trajectory, cost-evolution and summary files.

Layout under the output directory::

    summary.json
    <algorithm>/mean_cost.csv
    <algorithm>/trial_<i>_trajectory.csv
    <algorithm>/trial_<i>_costs.csv

Data tables depend only on the experiment; timestamps and wall times live
in the ``metadata`` block of summary.json.
"""

import json
import logging
import os

import numpy as np

from meddpy.timestamp import Timestamp
from meddpy.trajectory import format_float

logger = logging.getLogger(__name__)


class ArtifactException(Exception):
    pass


def _prepare_directory(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        raise ArtifactException('artifacts:emit_artifacts',
                                'cannot create ' + path + ': ' + str(e))
    if not os.access(path, os.W_OK):
        raise ArtifactException('artifacts:emit_artifacts',
                                path + ' is not writable')


def write_mean_cost(outfile, records):
    """Mean, min and max over trials of the best cost at every iteration."""
    curves = np.array([r.best_costs for r in records if not r.failed])
    outfile.write('iteration,mean,min,max\n')
    if curves.size == 0:
        return
    for i in range(curves.shape[1]):
        column = curves[:, i]
        outfile.write(','.join([str(i), format_float(column.mean()),
                                format_float(column.min()),
                                format_float(column.max())]) + '\n')


def build_summary(spec, result):
    return {
        'config': spec.resolved(),
        'seeds': spec.trial_seeds(),
        'results': result.summary,
        'metadata': {
            'created': str(Timestamp.utc_now()),
            'wall_time': {a: [r.wall_time for r in result.records
                              if r.algorithm == a]
                          for a in spec.algorithms},
            'errors': {a: {str(r.trial): r.error for r in result.records
                           if r.algorithm == a and r.failed}
                       for a in spec.algorithms},
        },
    }


def emit_artifacts(spec, result, out_dir=None):
    """Write every artifact of an experiment.

    :param spec: the experiment
    :type spec: ExperimentSpec
    :param result: its result
    :type result: ExperimentResult
    :param out_dir: output directory, defaults to ``spec.out_dir``
    :type out_dir: str
    :returns: list of written paths
    """
    out_dir = out_dir or spec.out_dir
    _prepare_directory(out_dir)
    dyn = result.scenario.dynamics
    state_names = dyn.get_state_names()
    control_names = dyn.get_control_names()
    written = []
    for algorithm in spec.algorithms:
        directory = os.path.join(out_dir, algorithm)
        _prepare_directory(directory)
        records = [r for r in result.records if r.algorithm == algorithm]
        for r in records:
            if r.failed:
                continue
            path = os.path.join(directory,
                                'trial_' + str(r.trial) + '_trajectory.csv')
            with open(path, 'w', newline='') as f:
                r.trajectory.write_csv(f, state_names, control_names)
            written.append(path)
            path = os.path.join(directory,
                                'trial_' + str(r.trial) + '_costs.csv')
            with open(path, 'w', newline='') as f:
                r.cost_recorder.write_csv(f)
            written.append(path)
        path = os.path.join(directory, 'mean_cost.csv')
        with open(path, 'w', newline='') as f:
            write_mean_cost(f, records)
        written.append(path)
    path = os.path.join(out_dir, 'summary.json')
    with open(path, 'w') as f:
        json.dump(build_summary(spec, result), f, indent=2, sort_keys=True)
        f.write('\n')
    written.append(path)
    logger.info('Wrote %d files to %s', len(written), out_dir)
    return written
