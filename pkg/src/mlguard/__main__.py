import sys

from mlguard.cli import main

sys.exit(main())
