import sys

from dalkit.cli import main

sys.exit(main())
