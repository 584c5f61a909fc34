"""Build random states from 2-qubit blocks and tally how often the target is detected.

For each N, draws random constructor specs over random partitions, rebuilds
the N-qubit state, checks the reduction reproduces the blended target and
counts how many targets (and hence constructed states) are flagged NPT.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qpartsep import statelib
from qpartsep.partition import enumerate_partitions
from qpartsep.ppt import Classification, scan_partitions
from qpartsep.reduction import reduce


@dataclass(frozen=True)
class RunConfig:
    n_min: int = 3
    n_max: int = 6
    trials: int = 50
    seed: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=RunConfig.trials)
    ap.add_argument("--seed", type=int, default=RunConfig.seed)
    ap.add_argument("--n-max", type=int, default=RunConfig.n_max)
    args = ap.parse_args()
    cfg = RunConfig(trials=args.trials, seed=args.seed, n_max=args.n_max)

    rng = np.random.default_rng(cfg.seed)
    print(f"{'N':>3} {'trials':>7} {'NPT':>5} {'max err':>10}  NPT partitions per state (mean)")
    for n in range(cfg.n_min, cfg.n_max + 1):
        ps = enumerate_partitions(n)
        npt = 0
        err = 0.0
        cuts = []
        for _ in range(cfg.trials):
            p = ps[rng.integers(len(ps))]
            spec = statelib.random_constructor_spec(p, rng)
            rho = statelib.construct_inseparable(spec)
            err = max(err, float(np.max(np.abs(reduce(rho, p).mat - spec.target()))))
            verdicts = {v.partition: v.classification for v in scan_partitions(rho)}
            npt += verdicts[p] is Classification.NPT_INSEPARABLE
            cuts.append(sum(c is Classification.NPT_INSEPARABLE for c in verdicts.values()))
        print(f"{n:3d} {cfg.trials:7d} {npt:5d} {err:10.2e}  {np.mean(cuts):.2f} of {len(ps)}")


if __name__ == "__main__":
    main()
