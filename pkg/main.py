#!/usr/bin/env python3
"""
Multi-view keyframe summarizer - command-line entry point.

    python main.py summarize --view a.csv --view b.csv --clusters 5
    python main.py learn-metric --view a.csv --view b.csv --clusters 5
    python main.py eval --manifest summary.json --events events.json
    python main.py bench --views 3 --corrupt 2 --seeds 20
"""

import sys

from src.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
