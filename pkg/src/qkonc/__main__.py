import sys

from qkonc.cli import main

sys.exit(main())
