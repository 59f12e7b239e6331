"""Main entry point for the application."""

import sys
from cpmm_hunter.cli import main

if __name__ == "__main__":
    sys.exit(main())
