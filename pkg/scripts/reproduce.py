"""Run every verification suite at its default bound and print a summary.

    python scripts/reproduce.py [--threads 4]
"""
import sys

from powerful_triples.cli import run

if __name__ == "__main__":
    sys.exit(run(["verify", "all", *sys.argv[1:]]))
