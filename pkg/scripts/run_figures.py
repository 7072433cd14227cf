#!/usr/bin/env python3
"""Run every preset experiment config and write its CSV time series.

Usage:
    python scripts/run_figures.py [--out-dir out] [--configs configs]
"""

import argparse
import sys
import time
from pathlib import Path

from cohdyn.cli import main as cli_main

REPO_ROOT = Path(__file__).resolve().parents[1]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default=str(REPO_ROOT / "out"))
    parser.add_argument("--configs", default=str(REPO_ROOT / "configs"))
    args = parser.parse_args()

    presets = sorted(Path(args.configs).glob("*.cfg"))
    if not presets:
        print(f"no .cfg files under {args.configs}", file=sys.stderr)
        return 1

    failures = 0
    for preset in presets:
        out = Path(args.out_dir) / f"{preset.stem}.csv"
        started = time.perf_counter()
        rc = cli_main(["simulate", "--config", str(preset), "--out", str(out)])
        elapsed = time.perf_counter() - started
        status = "ok" if rc == 0 else f"FAILED rc={rc}"
        print(f"{preset.stem:32s} -> {out}  [{status}, {elapsed:.1f} s]")
        failures += rc != 0
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
