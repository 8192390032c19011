import sys

from tropfm.cli import main

sys.exit(main())
