"""obstacles.py: Gaussian obstacle hills over the position components of
   the state."""

import numpy as np


class Obstacle:
    """One hill weight * exp(-|p - center|^2 / (2 radius^2))."""
    def __init__(self, center, radius, weight=1.0):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        self.weight = float(weight)
        if not self.radius > 0:
            raise ValueError('Obstacle: radius must be positive')
        if not self.weight > 0:
            raise ValueError('Obstacle: weight must be positive')

    def to_dict(self):
        return {'center': self.center.tolist(), 'radius': self.radius,
                'weight': self.weight}


class ObstacleField:
    """A sum of Gaussian hills evaluated on P x, where P is the constant
    matrix selecting the position components of the state.

    :param obstacles: the hills
    :type obstacles: list of Obstacle
    :param selection: position extractor, d x n_x
    :type selection: numpy.ndarray
    """
    def __init__(self, obstacles, selection):
        self.obstacles = list(obstacles)
        self.selection = np.atleast_2d(np.asarray(selection, dtype=float))
        d = self.selection.shape[0]
        for o in self.obstacles:
            if o.center.shape != (d,):
                raise ValueError('ObstacleField: obstacle centers must have '
                                 + str(d) + ' components')

    @classmethod
    def from_dicts(cls, entries, selection):
        return cls([Obstacle(e['center'], e['radius'], e.get('weight', 1.0))
                    for e in entries], selection)

    def __len__(self):
        return len(self.obstacles)

    def _terms(self, x):
        p = self.selection @ x
        for o in self.obstacles:
            diff = p - o.center
            value = o.weight * np.exp(-(diff @ diff) / (2.0 * o.radius ** 2))
            yield o, diff, value

    def cost(self, x):
        return float(sum(value for _, _, value in self._terms(x)))

    def derivatives(self, x):
        """Return (cost, gradient, Hessian) in state space."""
        P = self.selection
        d = P.shape[0]
        total = 0.0
        grad_p = np.zeros(d)
        hess_p = np.zeros((d, d))
        for o, diff, value in self._terms(x):
            r2 = o.radius ** 2
            total += value
            grad_p -= value * diff / r2
            hess_p += value * (np.outer(diff, diff) / r2 ** 2
                               - np.eye(d) / r2)
        return total, P.T @ grad_p, P.T @ hess_p @ P


def obstacle_cost(field, x):
    """Obstacle cost at ``x`` with its state-space gradient and Hessian."""
    return field.derivatives(x)
