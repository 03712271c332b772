#!/usr/bin/env python3
"""Oscillation-norm suites: telescoping, p-mean bounds, inflation independence."""
import argparse

from fracspace import (
    john_nirenberg_check,
    log_distance_field,
    make_space,
    telescoping_check,
)
from fracspace.rbmo import rho_independence


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--space", default="random:64")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    space = make_space(args.space, seed=args.seed)
    b = log_distance_field(space)
    tele = telescoping_check(space, b)
    jn = john_nirenberg_check(space, b)
    rho = rho_independence(space, b)
    print(f"telescoping fitted={tele.fitted_constant:.6g}")
    print(f"john_nirenberg per_p={jn.details['per_p']}")
    print(f"rho_independence ratio={rho.fitted_constant:.6g} norms={rho.details['norms']}")


if __name__ == "__main__":
    main()
