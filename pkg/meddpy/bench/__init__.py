"""
Benchmark harness: scenario files, seeded multi-trial experiments and
their artifacts.

**Submodules:**

* scenario
* experiment
* artifacts
* cli
"""

from meddpy.bench.scenario import *
from meddpy.bench.experiment import *
from meddpy.bench.artifacts import *
