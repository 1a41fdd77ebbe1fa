"""cost_model.py: Base class for running and terminal costs."""

import abc


class CostModel(abc.ABC):
    """Running cost l(x, u, t) and terminal cost Phi(x), both nonnegative,
    with their first and second derivatives.
    """

    @abc.abstractmethod
    def running(self, x, u, t):
        return

    @abc.abstractmethod
    def terminal(self, x):
        return

    @abc.abstractmethod
    def running_derivatives(self, x, u, t):
        """Return (l_x, l_u, l_xx, l_uu, l_ux).

        l_ux has shape n_u x n_x.
        """
        return

    @abc.abstractmethod
    def terminal_derivatives(self, x):
        """Return (Phi_x, Phi_xx)."""
        return
