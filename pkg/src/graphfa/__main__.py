import sys

from graphfa.cli import main

sys.exit(main())
