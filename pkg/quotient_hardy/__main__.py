import sys

from quotient_hardy.cli import main

sys.exit(main())
