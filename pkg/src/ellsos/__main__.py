import sys

from ellsos.cli import main

sys.exit(main())
