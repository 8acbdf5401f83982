"""Entry point for `python -m waveforce`."""

import sys

from .cli import main

sys.exit(main())
