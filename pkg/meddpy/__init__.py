"""
Maximum-entropy differential dynamic programming.

meddpy optimizes trajectories with DDP and with maximum-entropy variants
that periodically resample trajectory modes from a stochastic policy:
a Gaussian policy (Shannon entropy, unimodal or a mixture over modes) or
a q-Gaussian policy whose covariance grows with the cost-to-go (Tsallis
entropy).

This package contains some subpackages and submodules:

**Subpackages:**

* bench
* event_handlers
* models

**Submodules:**

* cost_model
* ddp
* dynamics_model
* policy
* qgauss
* solver
* solver_config
* solver_event_handler
* timestamp
* trajectory
* tsallis_math

"""

from meddpy.tsallis_math import *
from meddpy.qgauss import *
from meddpy.dynamics_model import *
from meddpy.cost_model import *
from meddpy.trajectory import *
from meddpy.ddp import *
from meddpy.policy import *
from meddpy.solver_config import *
from meddpy.solver_event_handler import *
from meddpy.solver import *
from meddpy.timestamp import *
