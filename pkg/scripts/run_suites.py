#!/usr/bin/env python3
"""Run every identity suite plus the fault-injection catalogue and print
the reports; exits nonzero on any failure."""

import argparse
import sys

from grasspq.verify import DEFAULT_SEED, fault_injection_report, suite_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3,
                    help="power suite checks exponents up to 2*max-n")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    ok = True
    for report in (suite_all(args.max_n, args.seed),
                   fault_injection_report(args.seed)):
        print(report.to_json() if args.json else report.to_text())
        print()
        ok = ok and report.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
