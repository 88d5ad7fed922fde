import sys

from ftm.cli import main

sys.exit(main())
