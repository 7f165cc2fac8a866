import sys

from monopole.cli import main

sys.exit(main())
