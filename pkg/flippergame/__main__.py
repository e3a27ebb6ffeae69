"""Run the command line by ``python -m flippergame``."""

import sys

from .cli import main

sys.exit(main())
