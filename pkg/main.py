import sys

from centralcurve.app import main

if __name__ == "__main__":
    sys.exit(main())
