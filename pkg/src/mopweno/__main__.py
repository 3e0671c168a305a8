import sys

from mopweno.cli import main

sys.exit(main())
