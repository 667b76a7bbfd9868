import sys

from knotproj.cli import main

sys.exit(main())
