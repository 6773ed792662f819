#!/usr/bin/env python3
"""Entry point for qftlab CLI."""

from qftlab.cli import main

if __name__ == "__main__":
    main()
