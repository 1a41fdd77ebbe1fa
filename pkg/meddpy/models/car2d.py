"""car2d.py: Planar kinematic car with translational and angular velocity
   inputs."""

import numpy as np

from meddpy.dynamics_model import DynamicsModel


class Car2D(DynamicsModel):
    """State (p_x, p_y, theta), control (v, omega), explicit Euler step.

    :param dt: time step in seconds
    :type dt: float
    """
    n_x = 3
    n_u = 2
    state_names = ('px', 'py', 'theta')
    control_names = ('v', 'omega')
    position_indices = (0, 1)

    def __init__(self, dt=0.02):
        self.dt = float(dt)

    def step(self, x, u):
        px, py, theta = x
        v, omega = u
        return np.array([px + self.dt * v * np.cos(theta),
                         py + self.dt * v * np.sin(theta),
                         theta + self.dt * omega])

    def jacobians(self, x, u):
        theta = x[2]
        v = u[0]
        dt = self.dt
        c, s = np.cos(theta), np.sin(theta)
        fx = np.array([[1.0, 0.0, -dt * v * s],
                       [0.0, 1.0, dt * v * c],
                       [0.0, 0.0, 1.0]])
        fu = np.array([[dt * c, 0.0],
                       [dt * s, 0.0],
                       [0.0, dt]])
        return fx, fu
