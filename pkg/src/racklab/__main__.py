import sys

from racklab.cli import main

sys.exit(main())
