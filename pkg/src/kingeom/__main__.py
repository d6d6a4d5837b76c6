import sys

from .speccli.cli import main

sys.exit(main())
