"""Long consecutive-powerful scan in resumable blocks.

    python scripts/scan_triples.py --limit 10^13 --block 10^12 --checkpoint scan.ckpt

The checkpoint holds the last fully scanned limit (one decimal integer).
"""
import argparse
import sys
from pathlib import Path

from powerful_triples.cli import bigint, run

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=bigint, default=10 ** 12)
    ap.add_argument("--block", type=bigint, default=10 ** 11)
    ap.add_argument("--checkpoint", default="triples.ckpt")
    args = ap.parse_args()
    ckpt = Path(args.checkpoint)
    done = int(ckpt.read_text()) if ckpt.exists() else 0
    while done < args.limit:
        upto = min(args.limit, done + args.block)
        code = run(["verify", "triples", "--limit", str(upto), "--resume-from", str(ckpt)])
        if code:
            sys.exit(code)
        done = upto
