import sys

from coxgrowth.cli import main

sys.exit(main())
