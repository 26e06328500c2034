"""Print the I and J index grids for a given p (same as `uqbar table`).

    python3 scripts/index_tables.py 7
"""

import sys

from uqbar.cli import main

if __name__ == "__main__":
    p = sys.argv[1] if len(sys.argv) > 1 else "5"
    sys.exit(main(["table", "--p", p, "--sets", "IJ"]))
