#!/usr/bin/env python3
"""Run every verification suite on the shipped circle config."""
import sys
from pathlib import Path

from energyrep.cli import main

REPO = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    config = sys.argv[1] if len(sys.argv) > 1 else str(REPO / "configs" / "circle.cfg")
    out = sys.argv[2] if len(sys.argv) > 2 else str(REPO / "out")
    sys.exit(main(["all", "--config", config, "--out", out]))
