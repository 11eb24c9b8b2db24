import sys

from belyi.cli import main

sys.exit(main())
