import sys

from batnav.cli import main

sys.exit(main())
