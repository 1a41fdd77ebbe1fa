"""Sample code running the quadrotor benchmark from the command line
entry point"""
import sys

from meddpy.bench.cli import main

# Equivalent to:
# meddpy-bench run --scenario ../scenarios/quadrotor.yaml --trials 3
sys.exit(main(['run', '--scenario', '../scenarios/quadrotor.yaml',
               '--trials', '3', '--out', 'quadrotor_results']))
