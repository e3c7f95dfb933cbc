"""Run the invariant suites and print one line per suite.

Usage: python3 scripts/run_selfcheck.py [--size N] [--seed S] [--samples K]
"""

import argparse
import sys
import time

from polarities.selfcheck import SelfCheckConfig, run


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=20)
    args = parser.parse_args()
    start = time.time()
    results = run(SelfCheckConfig(size=args.size, seed=args.seed, samples=args.samples))
    for r in results:
        print(r.line())
        for f in r.failures[:5]:
            print(f"  {f}")
    print(f"{time.time() - start:.1f}s")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
