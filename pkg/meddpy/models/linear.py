"""linear.py: Linear time-invariant dynamics x' = A x + B u."""

import numpy as np

from meddpy.dynamics_model import DynamicsModel


class LinearDynamics(DynamicsModel):
    def __init__(self, A, B):
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self.B = np.atleast_2d(np.asarray(B, dtype=float))
        self.n_x = self.A.shape[0]
        self.n_u = self.B.shape[1]
        if self.A.shape != (self.n_x, self.n_x) or self.B.shape[0] != self.n_x:
            raise ValueError('LinearDynamics: A must be square and B must '
                             'have as many rows as A')

    def step(self, x, u):
        return self.A @ x + self.B @ u

    def jacobians(self, x, u):
        return self.A, self.B
