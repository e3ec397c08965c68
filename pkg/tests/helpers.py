from fractions import Fraction

from sawitness.rational_ec import RationalPoint


def pt(x, y):
    return RationalPoint(Fraction(x), Fraction(y))


def as_pair(P):
    """RationalPoint -> oracle representation (tuple of Fractions or None)."""
    return None if P.is_infinity else (P.x, P.y)
