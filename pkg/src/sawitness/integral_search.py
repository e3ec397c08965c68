"""Bounded search for T-integral points on a punctured curve.

On an integral short Weierstrass model every affine rational point has the
shape (u/d^2, v/d^3) with gcd(u, d) = gcd(v, d) = 1, so T-integral points are
found by scanning T-smooth denominators d and numerators u and keeping those
for which u^3 + a*u*d^4 + b*d^6 is a perfect square.

The result is only as complete as the bounds; nothing here certifies that no
point lies outside them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import prime_factors
from .rational_ec import Curve, RationalPoint


@dataclass(frozen=True)
class TIntegralPoint:
    point: RationalPoint
    denominator_support: frozenset

    @property
    def denominator(self) -> int:
        # x = u/d^2 in lowest terms, so the x-denominator is d^2.
        return math.isqrt(self.point.x.denominator)


def t_smooth_numbers(T: Iterable[int], bound: int) -> list[int]:
    """Positive integers <= bound whose prime factors all lie in T."""
    found = {1}
    for p in sorted(set(T)):
        for d in list(found):
            d *= p
            while d <= bound:
                found.add(d)
                d *= p
    return sorted(found)


def _scan_row(args):
    a, b, d, H = args
    d4, d6 = d**4, d**6
    row = []
    for u in range(-H, H + 1):
        if d > 1 and math.gcd(u, d) != 1:
            continue
        rhs = u**3 + a * u * d4 + b * d6
        if rhs < 0:
            continue
        v = math.isqrt(rhs)
        if v * v != rhs:
            continue
        for w in ((-v, v) if v else (0,)):
            row.append((u, w))
    return d, row


def enumerate_T_integral(
    C: Curve,
    punctures: Sequence[RationalPoint],
    T: Iterable[int],
    max_denominator: int,
    max_numerator_abs: int,
    workers: int = 1,
) -> list[TIntegralPoint]:
    """All points (u/d^2, v/d^3) with T-smooth d <= max_denominator and
    |u| <= max_numerator_abs, minus the punctures.

    Sorted by (d, u, sign of v).  With ``workers > 1`` denominators are
    scanned in separate processes; the merge order is fixed, so the output
    does not depend on ``workers``.
    """
    if max_denominator < 1 or max_numerator_abs < 1:
        raise ValueError("search bounds must be positive")
    excluded = set(punctures)
    jobs = [
        (C.a, C.b, d, max_numerator_abs)
        for d in t_smooth_numbers(T, max_denominator)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_row, jobs))
    else:
        rows = [_scan_row(job) for job in jobs]

    out = []
    for d, row in rows:
        support = frozenset(prime_factors(d)) if d > 1 else frozenset()
        for u, v in row:
            P = RationalPoint(Fraction(u, d * d), Fraction(v, d**3))
            if P not in excluded:
                out.append(TIntegralPoint(P, support))
    return out
