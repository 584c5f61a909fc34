"""Scan every bipartition of a few named states and print the reports."""

import argparse

from qpartsep import statelib
from qpartsep.cli import build_report, render_report
from qpartsep.ppt import scan_partitions
from qpartsep.qstate import DEFAULT_TOL, pure_density

STATES = {
    "ghz3": lambda: pure_density(statelib.ghz(3)),
    "ghz4": lambda: pure_density(statelib.ghz(4)),
    "example-prime-0.9": lambda: statelib.example_prime(0.9),
    "example-dprime-0.9": lambda: statelib.example_dprime(0.9),
    "example-prime-0.2": lambda: statelib.example_prime(0.2),
    "random-mixed-4": lambda: statelib.random_mixed(4, 2, 7),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", metavar="NAME", help=f"states to scan, from {', '.join(STATES)} (default: all)")
    args = ap.parse_args()
    unknown = set(args.names) - set(STATES)
    if unknown:
        ap.error(f"unknown state(s): {', '.join(sorted(unknown))}")
    for name in args.names or STATES:
        rho = STATES[name]()
        verdicts = scan_partitions(rho)
        print(render_report(build_report(name, rho, verdicts, DEFAULT_TOL), verdicts))
        print()


if __name__ == "__main__":
    main()
