#!/usr/bin/env python3
"""Run every law suite with the default configuration and print a summary.

Usage: python scripts/run_all_suites.py [--json DIR] [--samples N] [--order N]
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from faadibruno.cli import SUITES, main as cli_main  # noqa: E402


def run(argv=None):
    parser = argparse.ArgumentParser()
    parser.add_argument("--json", help="directory for per-suite JSON reports")
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--order", type=int, default=4)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)

    worst = 0
    for suite in SUITES:
        flags = ["axioms", "--suite", suite, "--samples", str(args.samples),
                 "--order", str(args.order), "--seed", str(args.seed)]
        if args.json:
            out = pathlib.Path(args.json)
            out.mkdir(parents=True, exist_ok=True)
            flags += ["--json", str(out / f"{suite}.json")]
        start = time.monotonic()
        code = cli_main(flags)
        elapsed = time.monotonic() - start
        print(f"== {suite}: exit {code} in {elapsed:.1f}s\n")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(run())
