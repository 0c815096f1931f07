"""Arithmetic in the 4-real-dimensional commutative algebra with basis
{e1, i*e1, e2, i*e2}, where e1 is the unit and e2**2 = e1 + 2i*e2.

The element rho := e1 + i*e2 squares to zero, which makes the algebra
isomorphic to C[rho]/(rho**2).  Every element splits as c*e1 + d*rho with
complex c, d; inversion and all downstream series representations are
closed-form in that split.
"""

from __future__ import annotations

from dataclasses import dataclass


class ZeroDivisorError(ArithmeticError):
    """Raised when inverting an element of the zero-divisor plane d*rho."""


@dataclass(frozen=True)
class BElement:
    """One algebra element u1*e1 + u2*i*e1 + u3*e2 + u4*i*e2."""

    u1: float = 0.0
    u2: float = 0.0
    u3: float = 0.0
    u4: float = 0.0

    def __add__(self, other: "BElement") -> "BElement":
        return BElement(self.u1 + other.u1, self.u2 + other.u2,
                        self.u3 + other.u3, self.u4 + other.u4)

    def __sub__(self, other: "BElement") -> "BElement":
        return BElement(self.u1 - other.u1, self.u2 - other.u2,
                        self.u3 - other.u3, self.u4 - other.u4)

    def __neg__(self) -> "BElement":
        return BElement(-self.u1, -self.u2, -self.u3, -self.u4)

    def __mul__(self, other):
        if isinstance(other, BElement):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, scalar) -> "BElement":
        return self.scaled(scalar)

    def scaled(self, scalar: float) -> "BElement":
        s = float(scalar)
        return BElement(s * self.u1, s * self.u2, s * self.u3, s * self.u4)

    def components(self) -> tuple[float, float, float, float]:
        return (self.u1, self.u2, self.u3, self.u4)

    def norm(self) -> float:
        """Max-norm of the four real coefficients."""
        return max(abs(self.u1), abs(self.u2), abs(self.u3), abs(self.u4))


@dataclass(frozen=True)
class NilpotentForm:
    """The same element written as c*e1 + d*rho with rho = e1 + i*e2."""

    c: complex
    d: complex


E1 = BElement(1.0, 0.0, 0.0, 0.0)
E2 = BElement(0.0, 0.0, 1.0, 0.0)
RHO = BElement(1.0, 0.0, 0.0, 1.0)
ZERO = BElement()


def multiply(a: BElement, b: BElement) -> BElement:
    """Product under e1 = 1, e2**2 = e1 + 2i*e2, extended C-bilinearly.

    Writing a = alpha + beta*e2 with complex alpha, beta (and likewise b),
    the table gives (alpha1*alpha2 + beta1*beta2)
    + (alpha1*beta2 + alpha2*beta1 + 2i*beta1*beta2)*e2.
    """
    a1 = complex(a.u1, a.u2)
    b1 = complex(a.u3, a.u4)
    a2 = complex(b.u1, b.u2)
    b2 = complex(b.u3, b.u4)
    e1_part = a1 * a2 + b1 * b2
    e2_part = a1 * b2 + a2 * b1 + 2j * b1 * b2
    return BElement(e1_part.real, e1_part.imag, e2_part.real, e2_part.imag)


def to_nilpotent(a: BElement) -> NilpotentForm:
    """Change of basis e2 = i*e1 - i*rho; a linear bijection."""
    c = complex(a.u1 - a.u4, a.u2 + a.u3)
    d = complex(a.u4, -a.u3)
    return NilpotentForm(c, d)


def from_nilpotent(n: NilpotentForm) -> BElement:
    return BElement(n.c.real + n.d.real, n.c.imag + n.d.imag,
                    -n.d.imag, n.d.real)


def invert(a: BElement) -> BElement:
    """Multiplicative inverse: (c + d*rho)**-1 = 1/c - (d/c**2)*rho.

    Zero-divisor detection is exact (c == 0), not tolerance-based: the
    inverse magnifies like 1/|c|**2, so near-degenerate inputs must be
    screened by the caller.
    """
    n = to_nilpotent(a)
    if n.c == 0:
        raise ZeroDivisorError("element lies in the zero-divisor plane (c = 0)")
    cinv = 1.0 / n.c
    return from_nilpotent(NilpotentForm(cinv, -n.d * cinv * cinv))


def embed_point(x: float, y: float) -> BElement:
    """The algebra point x*e1 + y*e2 representing planar coordinates (x, y)."""
    return BElement(float(x), 0.0, float(y), 0.0)


def power(a: BElement, n: int) -> BElement:
    """a**n by repeated multiplication; power(a, 0) is the unit."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    out = E1
    for _ in range(n):
        out = multiply(out, a)
    return out
