#!/usr/bin/env python3
import sys
import os
import argparse
import logging
from fractions import Fraction
from typing import List

# Add root path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

try:
    from divlab.config import load_config
    from divlab.errors import DivLabError
    from divlab.ledger import CheckResult, Status, ledger_passed, run_example_ledger
except ImportError:
    print("Error: Could not import 'divlab'.")
    sys.exit(1)


def parse_b(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        print(f"Error: --b must be an exact rational, got {text!r}.")
        sys.exit(2)


def generate_report(results: List[CheckResult], limit: int):
    counts = {s: sum(1 for r in results if r.status is s) for s in Status}
    passed = ledger_passed(results)
    last = results[-1].name if results else "-"

    report = f'''
## pseudodivisible example ledger

## Status: {"OK" if passed else f"FAILED at {last}"} Checks run: {len(results)}/11 (PASS x{counts[Status.PASS]}, PARTIAL x{counts[Status.PARTIAL]}, FAIL x{counts[Status.FAIL]}) Sweep limit: {limit}
'''
    print(report)


def main():
    parser = argparse.ArgumentParser(description="Reproduce the worked 4-pseudodivisible example")
    parser.add_argument('--limit', type=int, default=1000, help='Sweep limit (below 1000 the sweep is PARTIAL)')
    parser.add_argument('--b', type=str, default=None, help='Replace the curve coefficient b')
    parser.add_argument('--config', type=str, default=None, help='JSON config file')
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO,
                        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    try:
        results = run_example_ledger(args.limit,
                                     parse_b(args.b) if args.b is not None else None,
                                     load_config(args.config))
    except DivLabError as e:
        print(f"Error: {e}")
        sys.exit(2)

    for result in results:
        print(result.line())
    generate_report(results, args.limit)

    if not ledger_passed(results):
        sys.exit(1)
    sys.exit(0)


if __name__ == "__main__":
    main()
