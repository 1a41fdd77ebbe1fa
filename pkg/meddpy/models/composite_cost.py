"""composite_cost.py: Quadratic tracking cost plus Gaussian obstacles."""

import numpy as np

from meddpy.cost_model import CostModel


def _psd(M, name, strict=False):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1] or not np.allclose(M, M.T):
        raise ValueError('CompositeCost: ' + name + ' must be symmetric')
    smallest = np.linalg.eigvalsh(M)[0]
    if smallest < (1e-12 if strict else -1e-12):
        raise ValueError('CompositeCost: ' + name + ' must be positive '
                         + ('definite' if strict else 'semidefinite'))
    return M


class CompositeCost(CostModel):
    """l(x, u, t) = 1/2 (x-x*)' Q_run (x-x*) + 1/2 u' R u + obstacles(x),
    Phi(x) = 1/2 (x-x*)' Q_f (x-x*) + obstacles(x).

    :param Q_run: running state weight, PSD
    :param R: control weight, PD
    :param Q_f: terminal state weight, PSD
    :param target: target state x*
    :param field: optional obstacle field
    :type field: ObstacleField
    """
    def __init__(self, Q_run, R, Q_f, target, field=None):
        self.Q_run = _psd(Q_run, 'Q_run')
        self.R = _psd(R, 'R', strict=True)
        self.Q_f = _psd(Q_f, 'Q_f')
        self.target = np.asarray(target, dtype=float)
        self.field = field
        self.n_u = self.R.shape[0]

    def _obstacles(self, x):
        if self.field is None or len(self.field) == 0:
            n = x.shape[0]
            return 0.0, np.zeros(n), np.zeros((n, n))
        return self.field.derivatives(x)

    def running(self, x, u, t):
        dx = x - self.target
        value = 0.5 * dx @ self.Q_run @ dx + 0.5 * u @ self.R @ u
        if self.field is not None:
            value += self.field.cost(x)
        return float(value)

    def terminal(self, x):
        dx = x - self.target
        value = 0.5 * dx @ self.Q_f @ dx
        if self.field is not None:
            value += self.field.cost(x)
        return float(value)

    def running_derivatives(self, x, u, t):
        dx = x - self.target
        _, g, H = self._obstacles(x)
        lx = self.Q_run @ dx + g
        lu = self.R @ u
        lxx = self.Q_run + H
        luu = self.R
        lux = np.zeros((self.n_u, x.shape[0]))
        return lx, lu, lxx, luu, lux

    def terminal_derivatives(self, x):
        dx = x - self.target
        _, g, H = self._obstacles(x)
        return self.Q_f @ dx + g, self.Q_f + H


def composite_cost(Q_run, R, Q_f, target, field=None):
    return CompositeCost(Q_run, R, Q_f, target, field)
