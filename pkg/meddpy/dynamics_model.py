"""dynamics_model.py: Base class for discrete-time dynamics."""

import abc

import numpy as np


class DynamicsModel(abc.ABC):
    """Deterministic discrete-time dynamics x_{t+1} = f(x_t, u_t).

    Concrete models set ``n_x`` and ``n_u`` and may name their state and
    control components for output tables. Second derivatives of f are not
    part of the interface; the solvers use Gauss-Newton expansions.
    """
    n_x = None
    n_u = None
    state_names = None
    control_names = None
    position_indices = None

    @abc.abstractmethod
    def step(self, x, u):
        """Return the next state.

        :param x: state, length n_x
        :type x: numpy.ndarray
        :param u: control, length n_u
        :type u: numpy.ndarray
        """
        return

    @abc.abstractmethod
    def jacobians(self, x, u):
        """Return (f_x, f_u) with shapes n_x x n_x and n_x x n_u."""
        return

    def get_state_names(self):
        if self.state_names is not None:
            return list(self.state_names)
        return ['x' + str(i) for i in range(self.n_x)]

    def get_control_names(self):
        if self.control_names is not None:
            return list(self.control_names)
        return ['u' + str(i) for i in range(self.n_u)]

    def selection_matrix(self):
        """Constant matrix extracting the position components of a state."""
        if self.position_indices is None:
            raise NotImplementedError('DynamicsModel:selection_matrix '
                                      'no position components defined')
        P = np.zeros((len(self.position_indices), self.n_x))
        for row, col in enumerate(self.position_indices):
            P[row, col] = 1.0
        return P
