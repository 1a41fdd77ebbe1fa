"""quadrotor.py: Rigid-body quadrotor with four rotor-force inputs.

State: position (x, y, z), velocity, Euler angles (roll phi, pitch theta,
yaw psi, Z-Y-X convention) and body angular rates (p, q, r). Controls are
the four rotor forces. The Euler-rate map is singular at theta = +-pi/2.
"""

import functools
import logging

import numpy as np
import sympy

from meddpy.dynamics_model import DynamicsModel

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=8)
def _derive(dt, mass, gravity, arm_length, inertia, torque_coefficient):
    """Symbolic Euler step and its Jacobians, lambdified to numpy."""
    logger.debug('Deriving quadrotor model for dt=%g, m=%g', dt, mass)
    x = sympy.symbols('x0:12')
    u = sympy.symbols('u0:4')
    vx, vy, vz = x[3:6]
    phi, theta, psi = x[6:9]
    p, q, r = x[9:12]
    f1, f2, f3, f4 = u
    Ixx, Iyy, Izz = inertia

    thrust = f1 + f2 + f3 + f4
    tau_phi = arm_length * (f4 - f2)
    tau_theta = arm_length * (f3 - f1)
    tau_psi = torque_coefficient * (f1 - f2 + f3 - f4)

    cphi, sphi = sympy.cos(phi), sympy.sin(phi)
    cth, sth = sympy.cos(theta), sympy.sin(theta)
    cpsi, spsi = sympy.cos(psi), sympy.sin(psi)

    accel = [thrust / mass * (cpsi * sth * cphi + spsi * sphi),
             thrust / mass * (spsi * sth * cphi - cpsi * sphi),
             thrust / mass * (cth * cphi) - gravity]
    euler_rates = [p + sphi * sth / cth * q + cphi * sth / cth * r,
                   cphi * q - sphi * r,
                   sphi / cth * q + cphi / cth * r]
    body_accel = [((Iyy - Izz) * q * r + tau_phi) / Ixx,
                  ((Izz - Ixx) * p * r + tau_theta) / Iyy,
                  ((Ixx - Iyy) * p * q + tau_psi) / Izz]

    xdot = [vx, vy, vz] + accel + euler_rates + body_accel
    x_next = sympy.Matrix([x[i] + dt * xdot[i] for i in range(12)])
    fx = x_next.jacobian(sympy.Matrix(x))
    fu = x_next.jacobian(sympy.Matrix(u))

    step = sympy.lambdify([x, u], x_next, 'numpy')
    jac_x = sympy.lambdify([x, u], fx, 'numpy')
    jac_u = sympy.lambdify([x, u], fu, 'numpy')
    return step, jac_x, jac_u


class Quadrotor(DynamicsModel):
    """Quadrotor model with thrust along the body z axis.

    Roll torque is l (f4 - f2), pitch torque l (f3 - f1) and yaw torque
    c (f1 - f2 + f3 - f4).

    :param dt: time step in seconds
    :param mass: kg
    :param gravity: m/s^2
    :param arm_length: rotor distance from the center, m
    :param inertia: diagonal inertia (Ixx, Iyy, Izz), kg m^2
    :param torque_coefficient: drag torque per unit thrust, m
    """
    n_x = 12
    n_u = 4
    state_names = ('x', 'y', 'z', 'vx', 'vy', 'vz', 'phi', 'theta', 'psi',
                   'p', 'q', 'r')
    control_names = ('f1', 'f2', 'f3', 'f4')
    position_indices = (0, 1, 2)

    def __init__(self, dt=0.02, mass=0.468, gravity=9.81, arm_length=0.225,
                 inertia=(4.856e-3, 4.856e-3, 8.801e-3),
                 torque_coefficient=0.0383):
        self.dt = float(dt)
        self.mass = float(mass)
        self.gravity = float(gravity)
        self.arm_length = float(arm_length)
        self.inertia = tuple(float(i) for i in inertia)
        self.torque_coefficient = float(torque_coefficient)
        self._step, self._jac_x, self._jac_u = _derive(
            self.dt, self.mass, self.gravity, self.arm_length, self.inertia,
            self.torque_coefficient)

    def hover_control(self):
        """Rotor forces m g / 4 that hold the quadrotor at rest."""
        return np.full(4, self.mass * self.gravity / 4.0)

    def step(self, x, u):
        return np.asarray(self._step(x, u), dtype=float).reshape(12)

    def jacobians(self, x, u):
        fx = np.asarray(self._jac_x(x, u), dtype=float).reshape(12, 12)
        fu = np.asarray(self._jac_u(x, u), dtype=float).reshape(12, 4)
        return fx, fu
