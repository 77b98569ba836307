#!/usr/bin/env python
"""
Almost Kahler harmonic numbers - Main Entry Point
Run this file with a command, e.g. `python main.py report kodaira-thurston-ak`
"""

import logging
import sys
from pathlib import Path

# Add workspace to path
workspace_root = Path(__file__).parent
sys.path.insert(0, str(workspace_root))

if __name__ == "__main__":
    from akharmonic.config import LOG_LEVEL
    from akharmonic.cli import cli

    logging.basicConfig(
        level=LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        cli()
    except KeyboardInterrupt:
        print("\n\n✓ Stopped", file=sys.stderr)
        sys.exit(130)
