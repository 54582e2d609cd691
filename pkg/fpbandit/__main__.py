import sys

from fpbandit.cli import main

sys.exit(main())
