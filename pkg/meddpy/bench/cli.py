"""cli.py: Command-line entry point of the benchmark harness.

Exit codes: 0 success, 1 configuration error, 2 every trial failed.
"""

import argparse
import itertools
import logging
import os
import sys

import yaml

from meddpy.bench.artifacts import ArtifactException
from meddpy.bench.experiment import ExperimentSpec, run_experiment
from meddpy.solver_config import ALGORITHMS, ConfigException

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_ALL_FAILED = 2

DEFAULT_SWEEP_ALPHAS = [1.0, 10.0, 20.0]


def _add_common_arguments(parser, sweep=False):
    parser.add_argument('--scenario', required=True,
                        help='experiment file (YAML)')
    parser.add_argument('--algo', nargs='+', choices=ALGORITHMS,
                        help='algorithms to run (default: from the file)')
    if sweep:
        parser.add_argument('--alpha', type=float, nargs='+',
                            default=DEFAULT_SWEEP_ALPHAS,
                            help='temperatures to sweep')
        parser.add_argument('--q', type=float, nargs='+',
                            help='entropic indices to sweep')
    else:
        parser.add_argument('--alpha', type=float, help='temperature')
        parser.add_argument('--q', type=float, help='entropic index')
    parser.add_argument('--modes', type=int, help='number of trajectories N')
    parser.add_argument('--sample-every', type=int,
                        help='sampling period m in iterations')
    parser.add_argument('--iters', type=int, help='iteration budget')
    parser.add_argument('--trials', type=int, help='number of trials')
    parser.add_argument('--seed', type=int, help='base seed')
    parser.add_argument('--out', help='output directory')
    parser.add_argument('--jobs', type=int, help='worker processes')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='meddpy-bench',
        description='Run maximum-entropy DDP benchmark experiments.')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    run_parser = commands.add_parser('run', help='run an experiment')
    _add_common_arguments(run_parser)
    run_parser.add_argument('--validate', action='store_true',
                            help='only check the configuration')

    validate_parser = commands.add_parser('validate',
                                          help='check a configuration')
    _add_common_arguments(validate_parser)

    sweep_parser = commands.add_parser(
        'sweep', help='run the Cartesian product of alpha and q values')
    _add_common_arguments(sweep_parser, sweep=True)
    return parser


def solver_overrides(args, alpha=None, q=None):
    overrides = {}
    if alpha is not None:
        overrides['alpha'] = alpha
    if q is not None:
        overrides['q'] = q
    for name, key in (('modes', 'n_modes'), ('sample_every', 'sample_every'),
                      ('iters', 'max_iter')):
        value = getattr(args, name)
        if value is not None:
            overrides[key] = value
    return overrides


def load_spec(args, overrides, out_dir=None):
    return ExperimentSpec.from_file(args.scenario, overrides=overrides,
                                    algorithms=args.algo, trials=args.trials,
                                    seed=args.seed,
                                    out_dir=out_dir or args.out,
                                    jobs=args.jobs)


def print_summary(summary, outfile=None):
    outfile = outfile or sys.stdout
    outfile.write('{:<18}{:>8}{:>8}{:>16}{:>16}{:>16}\n'.format(
        'algorithm', 'trials', 'failed', 'mean', 'min', 'max'))
    for algorithm, entry in summary.items():
        values = ['{:>16.6g}'.format(entry[k]) if entry[k] is not None
                  else '{:>16}'.format('-') for k in ('mean', 'min', 'max')]
        outfile.write('{:<18}{:>8}{:>8}'.format(algorithm, entry['trials'],
                                                 entry['failed'])
                      + ''.join(values) + '\n')


def command_validate(args):
    spec = load_spec(args, solver_overrides(args, args.alpha, args.q))
    scenario = spec.validate()
    print('OK: ' + scenario.system + ' with ' + ', '.join(spec.algorithms))
    return EXIT_OK


def command_run(args):
    if args.validate:
        return command_validate(args)
    spec = load_spec(args, solver_overrides(args, args.alpha, args.q))
    result = run_experiment(spec)
    print_summary(result.summary)
    if result.all_failed:
        return EXIT_ALL_FAILED
    return EXIT_OK


def command_sweep(args):
    base = load_spec(args, {})
    out_root = base.out_dir or 'sweep'
    q_values = args.q or [None]
    any_success = False
    for alpha, q in itertools.product(args.alpha, q_values):
        name = 'alpha_' + format(alpha, 'g')
        if q is not None:
            name += '_q_' + format(q, 'g')
        spec = load_spec(args, solver_overrides(args, alpha, q),
                         out_dir=os.path.join(out_root, name))
        print('== ' + name)
        result = run_experiment(spec)
        print_summary(result.summary)
        any_success = any_success or not result.all_failed
    return EXIT_OK if any_success else EXIT_ALL_FAILED


COMMANDS = {'run': command_run, 'validate': command_validate,
            'sweep': command_sweep}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s: '
                               '%(message)s')
    try:
        return COMMANDS[args.command](args)
    except ConfigException as e:
        sys.stderr.write('configuration error: ' + str(e) + '\n')
        return EXIT_CONFIG_ERROR
    except yaml.YAMLError as e:
        sys.stderr.write('configuration error: malformed experiment file: '
                         + str(e) + '\n')
        return EXIT_CONFIG_ERROR
    except (ArtifactException, OSError) as e:
        sys.stderr.write('error: ' + str(e) + '\n')
        return EXIT_CONFIG_ERROR
