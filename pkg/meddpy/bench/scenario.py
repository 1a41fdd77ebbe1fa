"""scenario.py: Builds a system, cost and initial controls from the
   ``scenario`` section of an experiment file."""

import numpy as np

from meddpy.models.car2d import Car2D
from meddpy.models.composite_cost import CompositeCost
from meddpy.models.obstacles import ObstacleField
from meddpy.models.quadrotor import Quadrotor
from meddpy.solver_config import ConfigException

SYSTEMS = ('car2d', 'quadrotor')

QUADROTOR_PARAMS = ('mass', 'gravity', 'arm_length', 'inertia',
                    'torque_coefficient')


def _weight_matrix(value, n, field):
    M = np.asarray(value, dtype=float)
    if M.ndim == 0:
        M = np.full(n, float(M))
    if M.ndim == 1:
        if M.shape[0] != n:
            raise ConfigException('Scenario:_weight_matrix',
                                  'expected ' + str(n) + ' diagonal entries',
                                  field=field)
        M = np.diag(M)
    if M.shape != (n, n):
        raise ConfigException('Scenario:_weight_matrix',
                              'expected a ' + str(n) + 'x' + str(n)
                              + ' matrix', field=field)
    return M


class Scenario:
    """A benchmark problem.

    Recognized keys: ``system`` (car2d or quadrotor), ``dt``, ``horizon``,
    ``x0``, ``target``, ``Q_run``, ``R``, ``Q_f`` (scalar, diagonal list or
    full matrix), ``obstacles`` (list of center/radius/weight), ``init``
    (zeros or hover), ``init_perturbation`` and, for the quadrotor,
    ``params``.
    """
    def __init__(self, values):
        values = dict(values)
        self.system = values.get('system')
        if self.system not in SYSTEMS:
            raise ConfigException('Scenario:__init__',
                                  'unknown system ' + repr(self.system),
                                  field='scenario.system')
        self.dt = float(values.get('dt', 0.02))
        self.horizon = values.get('horizon', 150 if self.system == 'car2d'
                                  else 200)
        if not (isinstance(self.horizon, int) and self.horizon >= 1):
            raise ConfigException('Scenario:__init__',
                                  'horizon must be a positive integer',
                                  field='scenario.horizon')
        if not self.dt > 0:
            raise ConfigException('Scenario:__init__', 'dt must be positive',
                                  field='scenario.dt')
        self.params = dict(values.get('params') or {})
        unknown = set(self.params) - set(QUADROTOR_PARAMS)
        if unknown:
            raise ConfigException('Scenario:__init__',
                                  'unknown model parameter',
                                  field='scenario.params.'
                                  + sorted(unknown)[0])
        self.dynamics = self.build_dynamics()
        n_x, n_u = self.dynamics.n_x, self.dynamics.n_u

        self.x0 = self._vector(values.get('x0', [0.0] * n_x), n_x, 'x0')
        self.target = self._vector(values.get('target', [0.0] * n_x), n_x,
                                   'target')
        self.Q_run = _weight_matrix(values.get('Q_run', 0.0), n_x,
                                    'scenario.Q_run')
        self.R = _weight_matrix(values.get('R', 1.0), n_u, 'scenario.R')
        self.Q_f = _weight_matrix(values.get('Q_f', 0.0), n_x,
                                  'scenario.Q_f')
        self.obstacles = [dict(o) for o in values.get('obstacles') or []]
        self.init = values.get('init', 'zeros' if self.system == 'car2d'
                               else 'hover')
        if self.init not in ('zeros', 'hover') or (
                self.init == 'hover' and self.system != 'quadrotor'):
            raise ConfigException('Scenario:__init__',
                                  'init must be zeros, or hover for the '
                                  'quadrotor', field='scenario.init')
        self.init_perturbation = float(values.get('init_perturbation', 0.0))
        try:
            self.cost = self.build_cost()
        except (ValueError, KeyError) as e:
            raise ConfigException('Scenario:__init__', str(e),
                                  field='scenario.obstacles')

    def _vector(self, value, n, name):
        v = np.asarray(value, dtype=float)
        if v.shape != (n,):
            raise ConfigException('Scenario:_vector',
                                  'expected ' + str(n) + ' components',
                                  field='scenario.' + name)
        return v

    def build_dynamics(self):
        if self.system == 'car2d':
            return Car2D(self.dt)
        params = dict(self.params)
        if 'inertia' in params:
            params['inertia'] = tuple(params['inertia'])
        return Quadrotor(self.dt, **params)

    def model_parameters(self):
        if self.system != 'quadrotor':
            return {}
        dyn = self.dynamics
        return {'mass': dyn.mass, 'gravity': dyn.gravity,
                'arm_length': dyn.arm_length, 'inertia': list(dyn.inertia),
                'torque_coefficient': dyn.torque_coefficient}

    def build_cost(self):
        field = ObstacleField.from_dicts(self.obstacles,
                                         self.dynamics.selection_matrix())
        return CompositeCost(self.Q_run, self.R, self.Q_f, self.target,
                             field)

    def initial_controls(self, rng=None):
        """Initial control sequence, optionally perturbed with Gaussian
        noise of scale ``init_perturbation`` drawn from ``rng``."""
        T, n_u = self.horizon, self.dynamics.n_u
        if self.init == 'hover':
            U = np.tile(self.dynamics.hover_control(), (T, 1))
        else:
            U = np.zeros((T, n_u))
        if self.init_perturbation > 0 and rng is not None:
            U = U + self.init_perturbation * rng.standard_normal((T, n_u))
        return U

    def to_dict(self):
        """Resolved scenario with every default filled in."""
        return {
            'system': self.system,
            'dt': self.dt,
            'horizon': self.horizon,
            'x0': self.x0.tolist(),
            'target': self.target.tolist(),
            'Q_run': self.Q_run.tolist(),
            'R': self.R.tolist(),
            'Q_f': self.Q_f.tolist(),
            'obstacles': [
                {'center': [float(c) for c in o['center']],
                 'radius': float(o['radius']),
                 'weight': float(o.get('weight', 1.0))}
                for o in self.obstacles],
            'init': self.init,
            'init_perturbation': self.init_perturbation,
            'params': self.model_parameters(),
        }
