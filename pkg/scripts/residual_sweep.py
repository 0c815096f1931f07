"""Sweep the boundary-data degree and report the pipeline residuals.

Boundary data are random trigonometric polynomials with geometrically
decaying coefficients.  Because the solver is exact on its input class,
the boundary/Hooke/loop residuals stay at rounding level for every degree;
the equilibrium and displacement-equilibrium numbers show the honest
finite-difference truncation of the verification stencils growing with
the field's derivative magnitudes.
"""

import argparse

import numpy as np

from biharm.elasticity import LameConstants, PolarGrid, solve_pipeline
from biharm.holomorphic import BoundaryFunction


def random_boundary(rng, degree, decay=0.75):
    damp = decay ** np.arange(1, degree + 1)
    return BoundaryFunction(rng.standard_normal() * 0.3,
                            tuple(rng.standard_normal(degree) * damp),
                            tuple(rng.standard_normal(degree) * damp))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--degrees", type=int, nargs="+",
                        default=[1, 2, 4, 8, 16, 32])
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    lame = LameConstants(2.0, 1.0)
    grid = PolarGrid(32, 96)

    names = ("boundary", "hooke", "equilibrium", "lame", "loop")
    header = "degree " + " ".join(f"{n:>12s}" for n in names)
    print(header)
    for degree in args.degrees:
        g1 = random_boundary(rng, degree)
        g2 = random_boundary(rng, degree)
        state = solve_pipeline(g1, g2, lame, grid)
        row = " ".join(f"{state.residuals[n]:12.3e}" for n in names)
        print(f"{degree:6d} {row}")


if __name__ == "__main__":
    main()
