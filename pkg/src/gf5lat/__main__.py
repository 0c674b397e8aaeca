import sys

from gf5lat.cli import main

sys.exit(main())
