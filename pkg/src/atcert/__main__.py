import sys

from atcert.cli import main

sys.exit(main())
