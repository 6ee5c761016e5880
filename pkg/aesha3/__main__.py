import sys

from aesha3._cli import main

sys.exit(main())
