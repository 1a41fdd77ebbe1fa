import sys

from meddpy.bench.cli import main

sys.exit(main())
