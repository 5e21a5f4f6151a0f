#!/usr/bin/env python3
"""Sweep the Gaussian-family Plancherel probe over the decay parameter.

For f(x) = e^{-a x^2} the plane integral of |fhat|^2 against the Gaussian
weight is compared with the two candidate readings of the weighted line
integral -- |f| to the first power versus |f|^2 -- and the matching reading
is printed per row.
"""

import argparse

import numpy as np

from dbarkit.moments import bargmann_probe


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("--a-min", type=float, default=1.25)
    ap.add_argument("--a-max", type=float, default=4.0)
    ap.add_argument("--steps", type=int, default=12)
    args = ap.parse_args()

    print(f"{'a':>6} {'lhs':>12} {'rhs(|f|)':>12} {'rhs(|f|^2)':>12}"
          f" {'rel(|f|)':>10} {'rel(|f|^2)':>10}  reading")
    for a in np.linspace(args.a_min, args.a_max, args.steps):
        rep = bargmann_probe(args.beta, float(a))
        print(f"{a:>6.3f} {rep.lhs:>12.6f} {rep.rhs_literal:>12.6f}"
              f" {rep.rhs_quadratic:>12.6f} {rep.rel_err_literal:>10.2e}"
              f" {rep.rel_err_quadratic:>10.2e}  {rep.matching_reading}")


if __name__ == "__main__":
    main()
