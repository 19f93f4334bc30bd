import sys

from apolarity.cli import main

sys.exit(main())
