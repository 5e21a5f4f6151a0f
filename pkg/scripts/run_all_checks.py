#!/usr/bin/env python3
"""Run every verification pipeline and write deterministic reports.

Equivalent to ``dbarkit all --sequential``; accepts the same config file and
prints the one-line verdict per check plus the overall result.
"""

import argparse
import sys

from dbarkit.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=None, help="JSON config file")
    ap.add_argument("--out", default="reports", help="output directory")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    args = ap.parse_args()
    argv = ["all", "--sequential", "--out", args.out, "--format", args.format]
    if args.config:
        argv += ["--config", args.config]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
