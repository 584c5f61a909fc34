"""Sweep the Werner mixing parameter and locate where the PPT verdict flips.

Prints a table of x, smallest partial-transpose eigenvalue, closed form
(1 - 3x)/4 and verdict, then bisects for the crossover.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qpartsep import statelib
from qpartsep.partition import parse_label
from qpartsep.ppt import Classification, ppt_verdict
from qpartsep.reduction import reduce


@dataclass(frozen=True)
class SweepConfig:
    points: int = 21
    bisect_steps: int = 50
    via_three_qubits: bool = True


def min_eig(x, cfg):
    if cfg.via_three_qubits:
        rs = reduce(statelib.example_prime(x), parse_label("A|BC"))
    else:
        rs = reduce(statelib.werner(x), parse_label("A|B"))
    return ppt_verdict(rs)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=SweepConfig.points)
    ap.add_argument("--two-qubit", action="store_true", help="test werner(x) directly instead of its 3-qubit embedding")
    args = ap.parse_args()
    cfg = SweepConfig(points=args.points, via_three_qubits=not args.two_qubit)

    print(f"{'x':>6} {'min_eig':>14} {'(1-3x)/4':>14}  verdict")
    for x in np.linspace(0, 1, cfg.points):
        v = min_eig(x, cfg)
        print(f"{x:6.3f} {v.min_eig:14.10f} {(1 - 3 * x) / 4:14.10f}  {v.classification.value}")

    lo, hi = 0.0, 1.0
    for _ in range(cfg.bisect_steps):
        mid = (lo + hi) / 2
        if min_eig(mid, cfg).classification is Classification.NPT_INSEPARABLE:
            hi = mid
        else:
            lo = mid
    print(f"\nverdict flips at x = {hi:.12f} (1/3 = {1 / 3:.12f})")


if __name__ == "__main__":
    main()
