"""Exact arithmetic on y^2 = x^3 + a*x + b over the rationals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import prime_factors
from .errors import NotTorsion, SingularCurve, WitnessError

# Mazur: a rational torsion point has order at most 12.
MAZUR_BOUND = 12


def discriminant(a: int, b: int) -> int:
    disc = -16 * (4 * a**3 + 27 * b**2)
    if disc == 0:
        raise SingularCurve(f"y^2 = x^3 + {a}x + {b} is singular")
    return disc


@dataclass(frozen=True)
class Curve:
    """Integral short Weierstrass model with its discriminant and bad primes."""

    a: int
    b: int
    disc: int = field(init=False, repr=False)
    bad_primes: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("curve coefficients must be integers")
        disc = discriminant(self.a, self.b)
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "bad_primes", frozenset(prime_factors(disc)))

    def rhs(self, x):
        return x**3 + self.a * x + self.b


@dataclass(frozen=True)
class RationalPoint:
    """A point with exact rational coordinates; ``x is None`` encodes infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates must be given, or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return format_point(self)

    def sort_key(self):
        """(denominator of x, numerator of x, sign of y); infinity sorts first."""
        if self.is_infinity:
            return (0, 0, 0)
        sign = (self.y > 0) - (self.y < 0)
        return (self.x.denominator, self.x.numerator, sign)


INFINITY = RationalPoint()


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None


def parse_point(text: str) -> RationalPoint:
    """Parse ``"inf"`` or ``"x,y"`` where each coordinate is ``n`` or ``n/d``."""
    text = text.strip()
    if text.lower() == "inf":
        return INFINITY
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'inf' or 'x,y', got {text!r}")
    return RationalPoint(_parse_rational(parts[0]), _parse_rational(parts[1]))


def format_point(P: RationalPoint) -> str:
    if P.is_infinity:
        return "inf"
    return (
        f"{P.x.numerator}/{P.x.denominator},"
        f"{P.y.numerator}/{P.y.denominator}"
    )


def on_curve(C: Curve, P: RationalPoint) -> bool:
    if P.is_infinity:
        return True
    return P.y * P.y == C.rhs(P.x)


def neg(C: Curve, P: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return P
    return RationalPoint(P.x, -P.y)


def add(C: Curve, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y + Q.y == 0:
            return INFINITY
        slope = (3 * P.x * P.x + C.a) / (2 * P.y)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - P.x - Q.x
    return RationalPoint(x3, slope * (P.x - x3) - P.y)


def scalar_mul(C: Curve, k: int, P: RationalPoint) -> RationalPoint:
    if k < 0:
        return scalar_mul(C, -k, neg(C, P))
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = add(C, result, addend)
        k >>= 1
        if k:
            addend = add(C, addend, addend)
    return result


def torsion_order(C: Curve, P: RationalPoint) -> Optional[int]:
    """Exact order of ``P`` if it is torsion, otherwise ``None``.

    Over the rationals a torsion point has order at most 12, so it suffices to
    walk the first twelve multiples.
    """
    R = P
    for k in range(1, MAZUR_BOUND + 1):
        if R.is_infinity:
            return k
        R = add(C, R, P)
    return None


def real_components(C: Curve) -> int:
    """Number of connected components of the real locus."""
    return 2 if C.disc > 0 else 1


def primitive_triple(P: RationalPoint) -> tuple[int, int, int]:
    """Coprime integers (X, Y, Z) with P = (X/Z, Y/Z); (0, 1, 0) for infinity."""
    if P.is_infinity:
        return (0, 1, 0)
    scale = math.lcm(P.x.denominator, P.y.denominator)
    X = P.x.numerator * (scale // P.x.denominator)
    Y = P.y.numerator * (scale // P.y.denominator)
    g = math.gcd(X, Y, scale)
    return (X // g, Y // g, scale // g)


@dataclass(frozen=True)
class PunctureSet:
    """Finite set of torsion points removed from the curve.

    The plain constructor stores whatever it is given; use :meth:`from_points`
    to validate torsion and compute the orders and their lcm.
    """

    points: tuple
    orders: tuple
    n: int

    @classmethod
    def from_points(cls, C: Curve, points: Sequence[RationalPoint]) -> "PunctureSet":
        points = tuple(points)
        if not points:
            raise WitnessError("the puncture set must be nonempty")
        if len(set(points)) != len(points):
            raise WitnessError("puncture points must be pairwise distinct")
        orders = []
        for m in points:
            if not on_curve(C, m):
                raise WitnessError(f"puncture {format_point(m)} is not on the curve")
            order = torsion_order(C, m)
            if order is None:
                raise NotTorsion(f"puncture {format_point(m)} has infinite order")
            orders.append(order)
        return cls(points, tuple(orders), math.lcm(*orders))
