"""Allow `python -m relaysim`."""

import sys

from .cli import main

sys.exit(main())
