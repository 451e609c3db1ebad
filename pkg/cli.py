"""
cli.py
ImsetMind - command-line entry point

    python cli.py standard-imset --graph examples.txt
"""
import sys
import os
from pathlib import Path

ROOT = Path(os.path.dirname(os.path.abspath(__file__)))
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from modules.cli import main

if __name__ == "__main__":
    sys.exit(main())
