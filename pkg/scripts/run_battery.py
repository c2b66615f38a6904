#!/usr/bin/env python3
"""Run the default verification battery and exit with its status.

Equivalent to `orliczalg suite`; kept as a script so the battery is one
command away in a fresh checkout.

Usage: python scripts/run_battery.py [extra suite flags...]
"""

import sys

from orliczalg.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite", *sys.argv[1:]]))
