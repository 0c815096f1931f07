"""Boundary value solver on the unit disk: find a monogenic function whose
first and fourth components take prescribed boundary values.

The reduction is to two classical harmonic-extension problems, using two
structural identities of the pair representation:

    U1 - U4 = Re F            on the whole disk,
    U4      = Re G + y*Im F'  with y = sin(theta) on the boundary.

Solve for F from u1 - u4, subtract the known sin(theta)*Im F' trace from
u4, and solve for G.  Both Schwarz steps are normalized by a vanishing
imaginary part at the origin, which pins the two-dimensional kernel of the
homogeneous problem (see kernel_basis).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .holomorphic import (BoundaryFunction, TaylorSeries, boundary_im_trace,
                          multiply_boundary, schwarz_solve)
from .monogenic import MonogenicFunction

DEFAULT_MODE_CAP = 4096


class DegreeOverflowError(ValueError):
    """An intermediate boundary trace exceeded the configured mode cap."""


@dataclass(frozen=True)
class Problem14:
    """Boundary data for the two prescribed components plus a truncation degree."""

    u1: BoundaryFunction
    u4: BoundaryFunction
    n: int

    def __post_init__(self):
        if self.n < max(self.u1.degree, self.u4.degree):
            raise ValueError("truncation degree n must cover the boundary data")


def solve_14(problem: Problem14, mode_cap: int = DEFAULT_MODE_CAP) -> MonogenicFunction:
    """Monogenic function matching the prescribed boundary components.

    Exact (up to rounding) for trigonometric-polynomial data; the returned
    function has Im F(0) = Im G(0) = 0.
    """
    if problem.n > mode_cap:
        raise DegreeOverflowError(f"truncation degree {problem.n} exceeds cap {mode_cap}")
    f = schwarz_solve(problem.u1 - problem.u4)
    sin_theta = BoundaryFunction(0.0, (0.0,), (1.0,))
    t = multiply_boundary(sin_theta, boundary_im_trace(f.differentiate()))
    if t.degree > mode_cap:
        raise DegreeOverflowError(f"intermediate trace degree {t.degree} exceeds cap {mode_cap}")
    g = schwarz_solve(problem.u4 - t)
    return MonogenicFunction(f, g)


def boundary_residual(phi: MonogenicFunction, problem: Problem14) -> float:
    """Max mismatch of the two prescribed components on a dense boundary sample."""
    m = 4 * problem.n + 8
    th = 2.0 * np.pi * np.arange(m) / m
    u1, _, _, u4 = phi.components(np.cos(th), np.sin(th))
    r1 = np.max(np.abs(u1 - problem.u1.sample(th)))
    r4 = np.max(np.abs(u4 - problem.u4.sample(th)))
    return float(max(r1, r4))


def kernel_basis() -> list[MonogenicFunction]:
    """The two constants spanning the homogeneous problem's solution space.

    Both have identically vanishing first and fourth components; the span
    equals that of the algebra constants i*e1 and e2.  Adding any
    combination to a solution leaves the prescribed components untouched.
    """
    return [
        MonogenicFunction(TaylorSeries((1j,)), TaylorSeries((0j,))),
        MonogenicFunction(TaylorSeries((0j,)), TaylorSeries((1j,))),
    ]
