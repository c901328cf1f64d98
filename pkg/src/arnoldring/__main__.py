import sys

from arnoldring.cli import main

sys.exit(main())
