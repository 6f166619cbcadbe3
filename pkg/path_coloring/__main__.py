"""Entry point: python -m path_coloring"""
import sys

from path_coloring.cli import main

if __name__ == "__main__":
    sys.exit(main())
