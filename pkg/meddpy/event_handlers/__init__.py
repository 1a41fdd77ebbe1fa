"""
This subpackage records what happens during a solver run: mode costs,
trajectories and the exploration covariance of every sampling event.
"""


from meddpy.event_handlers.solver_recorder import *
from meddpy.event_handlers.cost_evolution_recorder import *
from meddpy.event_handlers.trajectory_recorder import *
from meddpy.event_handlers.exploration_recorder import *
