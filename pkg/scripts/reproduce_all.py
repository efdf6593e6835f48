"""Run every recipe and print a one-line verdict per recipe.

    python scripts/reproduce_all.py [--out reports] [--format csv] [--workers 4]
"""
import argparse
import dataclasses
import sys
import time

from levinlab.config import WorkbenchConfig, load_config
from levinlab.recipes import RECIPES, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config")
    ap.add_argument("--out", default="reports")
    ap.add_argument("--format", choices=("json", "csv"), default="csv")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = load_config(args.config) if args.config else WorkbenchConfig()
    cfg = dataclasses.replace(cfg, out=args.out, format=args.format, workers=args.workers)
    failed = []
    for name in RECIPES:
        start = time.perf_counter()
        report, paths, ok = run_experiment(name, cfg)
        print(f"{'ok  ' if ok else 'FAIL'} {name:16s} {len(report['checks']):3d} checks "
              f"{time.perf_counter() - start:6.1f}s")
        if not ok:
            failed.append(name)
            for check in report["failed"]:
                print(f"       failed: {check}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
