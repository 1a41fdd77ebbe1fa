import json
import os

import numpy as np
import pytest
import yaml

import meddpy.bench.experiment as experiment
from meddpy.bench.cli import (EXIT_ALL_FAILED, EXIT_CONFIG_ERROR, EXIT_OK,
                              main)
from meddpy.bench.experiment import ExperimentSpec, run_experiment, run_trial
from meddpy.bench.scenario import Scenario
from meddpy.solver_config import ConfigException

SCENARIOS = os.path.join(os.path.dirname(__file__), '..', 'scenarios')

MAX_ITER = 4
HORIZON = 30


def tiny_document():
    return {
        'scenario': {
            'system': 'car2d',
            'dt': 0.05,
            'horizon': HORIZON,
            'x0': [0.0, 0.0, 0.0],
            'target': [1.5, 0.0, 0.0],
            'Q_run': [0.1, 0.1, 0.0],
            'R': [0.05, 0.05],
            'Q_f': [100.0, 100.0, 1.0],
            'obstacles': [{'center': [0.8, 0.2], 'radius': 0.2,
                           'weight': 2.0}],
            'init_perturbation': 0.1,
        },
        'solver': {
            'defaults': {'alpha': 1.0, 'n_modes': 3, 'sample_every': 2,
                         'max_iter': MAX_ITER},
            'me_tsallis': {'q': 1.5},
        },
        'experiment': {
            'algorithms': ['ddp', 'me_shannon_uni'],
            'trials': 2,
            'seed': 3,
        },
    }


def write_document(tmp_path, document, name='experiment.yaml'):
    path = str(tmp_path / name)
    with open(path, 'w') as f:
        yaml.safe_dump(document, f)
    return path


class TestScenario:
    def test_defaults(self):
        scenario = Scenario({'system': 'car2d'})
        values = scenario.to_dict()
        assert values['horizon'] == 150
        assert values['init'] == 'zeros'
        assert values['params'] == {}
        assert scenario.initial_controls().shape == (150, 2)

    def test_weight_forms(self):
        scenario = Scenario({'system': 'car2d', 'Q_run': 2.0,
                             'R': [1.0, 3.0],
                             'Q_f': [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0],
                                     [0.0, 0.0, 3.0]]})
        np.testing.assert_array_equal(scenario.Q_run, 2.0 * np.eye(3))
        np.testing.assert_array_equal(scenario.R, np.diag([1.0, 3.0]))
        np.testing.assert_array_equal(scenario.Q_f, np.diag([1.0, 2.0, 3.0]))

    @pytest.mark.parametrize('values, field', [
        ({'system': 'boat'}, 'scenario.system'),
        ({'system': 'car2d', 'horizon': 0}, 'scenario.horizon'),
        ({'system': 'car2d', 'dt': -0.1}, 'scenario.dt'),
        ({'system': 'car2d', 'x0': [0.0, 0.0]}, 'scenario.x0'),
        ({'system': 'car2d', 'R': [1.0, 1.0, 1.0]}, 'scenario.R'),
        ({'system': 'car2d', 'init': 'hover'}, 'scenario.init'),
        ({'system': 'car2d', 'obstacles': [{'center': [0.0, 0.0]}]},
         'scenario.obstacles'),
        ({'system': 'quadrotor', 'params': {'drag': 0.1}},
         'scenario.params.drag'),
    ])
    def test_validation(self, values, field):
        with pytest.raises(ConfigException) as info:
            Scenario(values)
        assert info.value.field == field

    def test_perturbed_initial_controls(self):
        scenario = Scenario({'system': 'car2d', 'horizon': 10,
                             'init_perturbation': 0.5})
        a = scenario.initial_controls(np.random.default_rng(1))
        b = scenario.initial_controls(np.random.default_rng(1))
        np.testing.assert_array_equal(a, b)
        assert np.any(a != 0.0)
        assert np.all(scenario.initial_controls() == 0.0)


class TestExperimentSpec:
    def test_layering(self):
        spec = ExperimentSpec.from_dict(tiny_document(),
                                        overrides={'alpha': 4.0})
        config = spec.solver_config('me_tsallis')
        assert (config.alpha, config.q, config.n_modes) == (4.0, 1.5, 3)
        assert config.max_iter == MAX_ITER
        assert spec.trial_seeds() == [3, 4]

    def test_keywords_take_precedence(self):
        spec = ExperimentSpec.from_dict(tiny_document(), trials=5, seed=0,
                                        algorithms=['ddp'])
        assert spec.trial_seeds() == [0, 1, 2, 3, 4]
        assert spec.algorithms == ['ddp']

    def test_missing_scenario(self):
        with pytest.raises(ConfigException) as info:
            ExperimentSpec.from_dict({'solver': {}})
        assert info.value.field == 'scenario'

    def test_solver_field_is_qualified(self):
        document = tiny_document()
        document['solver']['me_tsallis']['q'] = 2.5
        spec = ExperimentSpec.from_dict(document,
                                        algorithms=['me_tsallis'])
        with pytest.raises(ConfigException) as info:
            spec.validate()
        assert info.value.field == 'solver.me_tsallis.q'

    @pytest.mark.parametrize('change, field', [
        ({'trials': 0}, 'experiment.trials'),
        ({'seed': -2}, 'experiment.seed'),
        ({'jobs': 0}, 'experiment.jobs'),
        ({'algorithms': []}, 'experiment.algorithms'),
    ])
    def test_experiment_fields(self, change, field):
        document = tiny_document()
        document['experiment'].update(change)
        spec = ExperimentSpec.from_dict(document)
        with pytest.raises(ConfigException) as info:
            spec.validate()
        assert info.value.field == field

    def test_unknown_solver_section(self):
        document = tiny_document()
        document['solver']['mppi'] = {}
        with pytest.raises(ConfigException) as info:
            ExperimentSpec.from_dict(document).validate()
        assert info.value.field == 'solver.mppi'

    def test_resolved_echoes_defaults(self):
        resolved = ExperimentSpec.from_dict(tiny_document()).resolved()
        assert resolved['solver']['ddp']['reg_max'] == 1e10
        assert 'seed' not in resolved['solver']['ddp']
        assert resolved['scenario']['R'] == [[0.05, 0.0], [0.0, 0.05]]
        assert resolved['experiment'] == {
            'algorithms': ['ddp', 'me_shannon_uni'], 'trials': 2, 'seed': 3}


class TestRunTrial:
    def test_deterministic(self):
        spec = ExperimentSpec.from_dict(tiny_document())
        scenario_values = spec.validate().to_dict()
        config_values = spec.solver_config('me_shannon_uni').to_dict()
        a = run_trial(scenario_values, config_values, 0, 7)
        b = run_trial(scenario_values, config_values, 0, 7)
        assert not a.failed
        assert a.final_cost == b.final_cost
        np.testing.assert_array_equal(a.cost_history, b.cost_history)
        assert a.best_costs.shape == (MAX_ITER,)

    def test_failure_is_recorded(self, monkeypatch):
        def explode(*args, **kwargs):
            raise FloatingPointError('diverged')

        monkeypatch.setattr(experiment, 'run', explode)
        spec = ExperimentSpec.from_dict(tiny_document())
        record = run_trial(spec.validate().to_dict(),
                           spec.solver_config('ddp').to_dict(), 1, 4)
        assert record.failed
        assert record.final_cost is None
        assert 'diverged' in record.error


class TestArtifacts:
    def test_layout(self, tmp_path):
        spec = ExperimentSpec.from_dict(tiny_document(),
                                        out_dir=str(tmp_path))
        result = run_experiment(spec)
        assert len(result.records) == 4
        assert not result.all_failed
        for algorithm in ('ddp', 'me_shannon_uni'):
            directory = tmp_path / algorithm
            assert sorted(os.listdir(str(directory))) == [
                'mean_cost.csv', 'trial_0_costs.csv', 'trial_0_trajectory.csv',
                'trial_1_costs.csv', 'trial_1_trajectory.csv']
            lines = (directory / 'trial_0_trajectory.csv').read_text() \
                .splitlines()
            assert lines[0] == 't,px,py,theta,v,omega'
            assert len(lines) == HORIZON + 2
            assert lines[-1].endswith(',,')
            costs = (directory / 'trial_1_costs.csv').read_text().splitlines()
            assert len(costs) == MAX_ITER + 1
            mean = (directory / 'mean_cost.csv').read_text().splitlines()
            assert mean[0] == 'iteration,mean,min,max'
            assert len(mean) == MAX_ITER + 1

    def test_summary(self, tmp_path):
        spec = ExperimentSpec.from_dict(tiny_document(),
                                        out_dir=str(tmp_path))
        result = run_experiment(spec)
        with open(str(tmp_path / 'summary.json')) as f:
            summary = json.load(f)
        assert summary['seeds'] == [3, 4]
        assert summary['config']['solver']['me_shannon_uni']['n_modes'] == 3
        ddp = summary['results']['ddp']
        assert ddp['failed'] == 0
        assert ddp['mean'] == pytest.approx(np.mean(ddp['final_costs']))
        assert 'improved_over_ddp' not in ddp
        me = summary['results']['me_shannon_uni']
        assert 0.0 <= me['improved_over_ddp'] <= 1.0
        assert set(summary['metadata']) == {'created', 'wall_time', 'errors'}
        assert me['final_costs'] == [r.final_cost for r in result.records
                                     if r.algorithm == 'me_shannon_uni']

    def test_reproducible(self, tmp_path):
        outputs = []
        for name in ('a', 'b'):
            spec = ExperimentSpec.from_dict(tiny_document(),
                                            out_dir=str(tmp_path / name))
            run_experiment(spec)
            outputs.append(tmp_path / name)
        for algorithm in ('ddp', 'me_shannon_uni'):
            for name in os.listdir(str(outputs[0] / algorithm)):
                assert (outputs[0] / algorithm / name).read_bytes() == \
                    (outputs[1] / algorithm / name).read_bytes()
        summaries = []
        for out in outputs:
            with open(str(out / 'summary.json')) as f:
                summary = json.load(f)
            del summary['metadata']
            summaries.append(summary)
        assert summaries[0] == summaries[1]

    def test_no_output_directory(self, tmp_path):
        spec = ExperimentSpec.from_dict(tiny_document(), algorithms=['ddp'],
                                        trials=1)
        result = run_experiment(spec)
        assert spec.out_dir is None
        assert len(result.records) == 1

    @pytest.mark.slow
    def test_jobs_match_sequential(self, tmp_path):
        finals = []
        for jobs in (1, 2):
            spec = ExperimentSpec.from_dict(tiny_document(), jobs=jobs)
            result = run_experiment(spec, emit=False)
            finals.append([r.final_cost for r in result.records])
        assert finals[0] == finals[1]


class TestCommandLine:
    def test_validate(self, tmp_path, capsys):
        path = write_document(tmp_path, tiny_document())
        assert main(['validate', '--scenario', path]) == EXIT_OK
        assert capsys.readouterr().out.startswith('OK: car2d')

    def test_bad_q(self, tmp_path, capsys):
        path = write_document(tmp_path, tiny_document())
        code = main(['validate', '--scenario', path, '--algo', 'me_tsallis',
                     '--q', '2.0'])
        assert code == EXIT_CONFIG_ERROR
        assert 'solver.me_tsallis.q' in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        code = main(['validate', '--scenario', str(tmp_path / 'none.yaml')])
        assert code == EXIT_CONFIG_ERROR
        assert capsys.readouterr().err.startswith('error: ')

    def test_malformed_file(self, tmp_path, capsys):
        path = tmp_path / 'broken.yaml'
        path.write_text('scenario: {system: car2d, horizon: [30\n')
        code = main(['validate', '--scenario', str(path)])
        assert code == EXIT_CONFIG_ERROR
        err = capsys.readouterr().err
        assert err.startswith('configuration error: malformed experiment')
        assert 'Traceback' not in err

    def test_run_validate_writes_nothing(self, tmp_path):
        path = write_document(tmp_path, tiny_document())
        out = tmp_path / 'out'
        code = main(['run', '--scenario', path, '--validate', '--out',
                     str(out)])
        assert code == EXIT_OK
        assert not out.exists()

    def test_run(self, tmp_path, capsys):
        path = write_document(tmp_path, tiny_document())
        out = tmp_path / 'out'
        code = main(['run', '--scenario', path, '--out', str(out),
                     '--trials', '1', '--iters', '3'])
        assert code == EXIT_OK
        assert (out / 'summary.json').exists()
        costs = (out / 'ddp' / 'trial_0_costs.csv').read_text().splitlines()
        assert len(costs) == 4
        assert 'me_shannon_uni' in capsys.readouterr().out

    def test_all_trials_failed(self, tmp_path, monkeypatch):
        def explode(*args, **kwargs):
            raise FloatingPointError('diverged')

        monkeypatch.setattr(experiment, 'run', explode)
        path = write_document(tmp_path, tiny_document())
        out = tmp_path / 'out'
        code = main(['run', '--scenario', path, '--out', str(out)])
        assert code == EXIT_ALL_FAILED
        with open(str(out / 'summary.json')) as f:
            summary = json.load(f)
        assert summary['results']['ddp']['failed'] == 2
        assert summary['results']['ddp']['mean'] is None
        assert set(summary['metadata']['errors']['ddp']) == {'0', '1'}

    def test_sweep(self, tmp_path):
        path = write_document(tmp_path, tiny_document())
        out = tmp_path / 'sweep'
        code = main(['sweep', '--scenario', path, '--algo', 'me_tsallis',
                     '--alpha', '1', '2', '--q', '1.3', '--trials', '1',
                     '--iters', '2', '--out', str(out)])
        assert code == EXIT_OK
        assert sorted(os.listdir(str(out))) == ['alpha_1_q_1.3',
                                                'alpha_2_q_1.3']
        with open(str(out / 'alpha_2_q_1.3' / 'summary.json')) as f:
            summary = json.load(f)
        resolved = summary['config']['solver']['me_tsallis']
        assert (resolved['alpha'], resolved['q']) == (2.0, 1.3)

    @pytest.mark.parametrize('name', ['car2d.yaml', 'quadrotor.yaml'])
    def test_shipped_scenarios_validate(self, name):
        path = os.path.join(SCENARIOS, name)
        assert main(['validate', '--scenario', path]) == EXIT_OK

    def test_quadrotor_rejects_car_index(self):
        path = os.path.join(SCENARIOS, 'quadrotor.yaml')
        code = main(['validate', '--scenario', path, '--q', '1.6'])
        assert code == EXIT_CONFIG_ERROR
