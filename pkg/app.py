"""
Coding Lab - Finite-field codes, local decoding and PIR experiments
Entry point for the command-line experiment driver
"""

import sys

from experiments.cli import main

if __name__ == "__main__":
    sys.exit(main())
