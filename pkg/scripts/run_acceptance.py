"""Run the acceptance criteria and write a JSON report.

Usage: python3 scripts/run_acceptance.py [--only 1,2,9] [--out report.json]
"""
import argparse
import json
import sys

from nilhecke.acceptance import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", help="comma-separated criterion numbers")
    ap.add_argument("--out", default="acceptance_report.json")
    args = ap.parse_args()
    numbers = [int(x) for x in args.only.split(",")] if args.only else None
    results = []
    for res in run_all(numbers):
        print(res.summary_line(), flush=True)
        results.append(res.to_json())
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(results, fh, indent=1, sort_keys=True)
    sys.exit(0 if all(r["passed"] for r in results) else 1)


if __name__ == "__main__":
    main()
