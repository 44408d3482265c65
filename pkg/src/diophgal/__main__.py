import sys

from diophgal.cli import main

sys.exit(main())
