"""
Benchmark systems and costs.

**Submodules:**

* car2d (planar kinematic car)
* quadrotor (12-state rigid-body quadrotor)
* linear (linear time-invariant dynamics)
* obstacles (Gaussian obstacle hills)
* composite_cost (quadratic tracking plus obstacles)
"""

from meddpy.models.car2d import *
from meddpy.models.quadrotor import *
from meddpy.models.linear import *
from meddpy.models.obstacles import *
from meddpy.models.composite_cost import *
