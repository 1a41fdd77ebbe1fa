"""solver_config.py: Parameters of the trajectory optimizers."""

import copy

from meddpy.policy import admissible_q_range

ALGORITHMS = ('ddp', 'me_shannon_uni', 'me_shannon_multi', 'me_tsallis')


class ConfigException(Exception):
    """Invalid configuration. ``field`` names the offending parameter."""
    def __init__(self, source, message, field=None):
        Exception.__init__(self, source, message)
        self.field = field

    def __str__(self):
        if self.field is not None:
            return self.field + ': ' + self.args[1]
        return self.args[1]


class SolverConfig:
    """Settings for one solver run.

    Regularization follows a Levenberg-Marquardt schedule on Q_uu: it is
    multiplied by ``reg_increase`` after a failed iteration and divided by
    ``reg_decrease`` after a successful one, within [reg_min, reg_max].
    ``sigma_max`` optionally caps the covariance multiplier of the Tsallis
    policy.
    """
    defaults = {
        'algorithm': 'ddp',
        'alpha': 1.0,
        'q': 1.5,
        'n_modes': 8,
        'sample_every': 5,
        'max_iter': 100,
        'seed': 0,
        'reg_init': 1e-6,
        'reg_min': 1e-9,
        'reg_max': 1e10,
        'reg_increase': 10.0,
        'reg_decrease': 2.0,
        'line_search_steps': 11,
        'sigma_max': None,
        'sample_retries': 5,
    }

    def __init__(self, **kwargs):
        unknown = set(kwargs) - set(self.defaults)
        if unknown:
            field = sorted(unknown)[0]
            raise ConfigException('SolverConfig:__init__',
                                  'unknown solver parameter', field=field)
        for name, value in self.defaults.items():
            setattr(self, name, _coerce(name, kwargs.get(name, value)))

    @classmethod
    def from_dict(cls, values):
        return cls(**dict(values))

    def to_dict(self):
        return {name: copy.copy(getattr(self, name)) for name in self.defaults}

    def replace(self, **kwargs):
        values = self.to_dict()
        values.update(kwargs)
        return SolverConfig(**values)

    @property
    def effective_modes(self):
        """Number of trajectories actually optimized."""
        if self.algorithm == 'ddp':
            return 1
        return self.n_modes

    def _require(self, condition, field, message):
        if not condition:
            raise ConfigException('SolverConfig:validate', message,
                                  field=field)

    def validate(self, n_u):
        """Check admissibility for a system with ``n_u`` controls.

        :raises ConfigException: naming the first offending field
        """
        self._require(self.algorithm in ALGORITHMS, 'algorithm',
                      'unknown algorithm ' + repr(self.algorithm)
                      + ', expected one of ' + ', '.join(ALGORITHMS))
        self._require(_is_number(self.alpha) and self.alpha > 0, 'alpha',
                      'alpha must be positive')
        self._require(_is_int(self.n_modes) and self.n_modes >= 1, 'n_modes',
                      'n_modes must be an integer >= 1')
        self._require(_is_int(self.sample_every) and self.sample_every >= 1,
                      'sample_every', 'sample_every must be an integer >= 1')
        self._require(_is_int(self.max_iter) and self.max_iter >= 1,
                      'max_iter', 'max_iter must be an integer >= 1')
        self._require(_is_int(self.seed) and self.seed >= 0, 'seed',
                      'seed must be a nonnegative integer')
        self._require(_is_number(self.reg_min) and self.reg_min > 0,
                      'reg_min', 'reg_min must be positive')
        self._require(_is_number(self.reg_init)
                      and self.reg_min <= self.reg_init <= self.reg_max,
                      'reg_init', 'reg_init must lie in [reg_min, reg_max]')
        self._require(_is_number(self.reg_increase) and self.reg_increase > 1,
                      'reg_increase', 'reg_increase must exceed 1')
        self._require(_is_number(self.reg_decrease) and self.reg_decrease > 1,
                      'reg_decrease', 'reg_decrease must exceed 1')
        self._require(_is_int(self.line_search_steps)
                      and self.line_search_steps >= 1, 'line_search_steps',
                      'line_search_steps must be an integer >= 1')
        self._require(self.sigma_max is None
                      or (_is_number(self.sigma_max) and self.sigma_max > 0),
                      'sigma_max', 'sigma_max must be positive or null')
        self._require(_is_int(self.sample_retries)
                      and self.sample_retries >= 0,
                      'sample_retries', 'sample_retries must be >= 0')
        if self.algorithm == 'me_tsallis':
            low_q, high_q = admissible_q_range(n_u)
            self._require(_is_number(self.q) and low_q < self.q < high_q, 'q',
                          'q must satisfy ' + str(low_q) + ' < q < '
                          + str(high_q) + ' for n_u=' + str(n_u)
                          + ', got ' + str(self.q))
        return self


FLOAT_FIELDS = ('alpha', 'q', 'reg_init', 'reg_min', 'reg_max',
                'reg_increase', 'reg_decrease', 'sigma_max')


def _coerce(name, value):
    # YAML reads exponents without a decimal point (1e-6) as strings
    if name in FLOAT_FIELDS and isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ConfigException('SolverConfig:__init__',
                                  'not a number: ' + repr(value), field=name)
    return value


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)
