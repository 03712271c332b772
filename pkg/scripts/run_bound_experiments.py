#!/usr/bin/env python3
"""Fitted operator-norm constants for the fractional integral and commutators.

Runs the boundedness experiments across grid sizes and seeds and prints one
structured report per run.
"""
import argparse

from fracspace import (
    ExperimentConfig,
    bound_experiment_I,
    bound_experiment_commutator,
    bound_experiment_multilinear,
    log_distance_field,
    make_space,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 256])
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--alpha", type=float, default=0.4)
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--commutator-size", type=int, default=64,
                        help="grid size for the k = 1, 2 commutator runs")
    args = parser.parse_args()

    for n in args.sizes:
        for seed in args.seeds:
            cfg = ExperimentConfig(space_family=f"grid1d:{n}", alpha=args.alpha,
                                   p=args.p, trials=args.trials, seed=seed)
            rep = bound_experiment_I(cfg)
            print(f"bound_I n={n} seed={seed} fitted={rep.fitted_constant:.6g}")

    n = args.commutator_size
    space = make_space(f"grid1d:{n}")
    b = log_distance_field(space)
    for seed in args.seeds:
        cfg = ExperimentConfig(space_family=f"grid1d:{n}", alpha=args.alpha,
                               p=args.p, trials=args.trials, seed=seed)
        r1 = bound_experiment_commutator(cfg, b)
        r2 = bound_experiment_multilinear(cfg, [b, b])
        print(f"commutator n={n} seed={seed} k1={r1.fitted_constant:.6g} "
              f"k2={r2.fitted_constant:.6g}")


if __name__ == "__main__":
    main()
