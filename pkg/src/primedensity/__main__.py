"""Allow ``python -m primedensity``."""

import sys

from .cli import main

sys.exit(main())
