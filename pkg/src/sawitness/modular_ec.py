"""Points of a good-reduction curve modulo p^e.

Points are projective triples over Z/p^e.  Addition uses two projective
addition laws of bidegree (2, 2):

* ``_law_y`` degenerates only when P - Q is a point of order two,
* ``_law_z`` degenerates only when P = Q,

both taken modulo p.  Their degenerate loci are disjoint, so for any pair of
points at least one law returns a triple with a unit coordinate, and that
triple is the sum modulo p^e.  No division ever happens, so no precision is
lost and no guard digits are needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import factorint

from .arith import legendre
from .errors import BadPrime
from .rational_ec import Curve, RationalPoint, primitive_triple


@dataclass(frozen=True)
class ModPoint:
    """Projective point modulo ``p**e`` in canonical form.

    The first unit among (Z, Y, X) is scaled to 1, which makes equality of
    canonical triples the same as projective congruence at full precision.
    """

    p: int
    e: int
    X: int
    Y: int
    Z: int

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.X, self.Y, self.Z)

    @property
    def is_zero(self) -> bool:
        return self.X == 0 and self.Z == 0

    @classmethod
    def from_triple(cls, p: int, e: int, X: int, Y: int, Z: int) -> "ModPoint":
        m = p**e
        X, Y, Z = X % m, Y % m, Z % m
        for c in (Z, Y, X):
            if c % p:
                inv = pow(c, -1, m)
                return cls(p, e, X * inv % m, Y * inv % m, Z * inv % m)
        raise ValueError(f"({X}:{Y}:{Z}) is not a primitive triple mod {p}^{e}")

    def lower(self, r: int) -> "ModPoint":
        """The same point at precision ``r <= e``."""
        if not 1 <= r <= self.e:
            raise ValueError(f"precision {r} outside 1..{self.e}")
        return ModPoint.from_triple(self.p, r, self.X, self.Y, self.Z)

    def __str__(self):
        return f"({self.X}:{self.Y}:{self.Z})"


def _check_good(C: Curve, p: int):
    if p in C.bad_primes:
        raise BadPrime(f"{p} divides the discriminant {C.disc}")


def mod_on_curve(C: Curve, P: ModPoint) -> bool:
    X, Y, Z = P.coords
    return (Y * Y * Z - X**3 - C.a * X * Z * Z - C.b * Z**3) % P.modulus == 0


def reduce_point(C: Curve, P: RationalPoint, p: int, e: int = 1) -> ModPoint:
    _check_good(C, p)
    return ModPoint.from_triple(p, e, *primitive_triple(P))


def mod_zero(p: int, e: int = 1) -> ModPoint:
    return ModPoint(p, e, 0, 1, 0)


def mod_neg(C: Curve, P: ModPoint) -> ModPoint:
    return ModPoint.from_triple(P.p, P.e, P.X, -P.Y, P.Z)


def _law_y(a, b, P, Q):
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    cross = X1 * Z2 + X2 * Z1
    zz = Z1 * Z2
    s = Y1 * Y2 - a * cross - 3 * b * zz
    t = a * X1 * X2 + 3 * b * cross - a * a * zz
    u = Y1 * Y2 + a * cross + 3 * b * zz
    w = 3 * X1 * X2 + a * zz
    xy = X1 * Y2 + X2 * Y1
    yz = Y1 * Z2 + Y2 * Z1
    return (xy * s - yz * t, u * s + w * t, yz * u + xy * w)


def _law_z(a, b, P, Q):
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    f = a * (X1 * Z2 + X2 * Z1) + 3 * b * Z1 * Z2 - Y1 * Y2
    w = 3 * X1 * X2 + a * Z1 * Z2
    dxy = X1 * Y2 - X2 * Y1
    dxz = X1 * Z2 - X2 * Z1
    syz = Y1 * Z2 + Y2 * Z1
    dyz = Y1 * Z2 - Y2 * Z1
    return (dxy * syz - dxz * f, dyz * f - w * dxy, w * dxz - syz * dyz)


def mod_add(C: Curve, P: ModPoint, Q: ModPoint) -> ModPoint:
    if (P.p, P.e) != (Q.p, Q.e):
        raise ValueError("points live modulo different prime powers")
    p, m = P.p, P.modulus
    for law in (_law_y, _law_z):
        R = [c % m for c in law(C.a, C.b, P.coords, Q.coords)]
        if any(c % p for c in R):
            return ModPoint.from_triple(p, P.e, *R)
    # Unreachable for points of a curve with good reduction at p.
    raise ArithmeticError(f"both addition laws degenerate at {P} + {Q}")


def mod_scalar_mul(C: Curve, k: int, P: ModPoint) -> ModPoint:
    if k < 0:
        return mod_scalar_mul(C, -k, mod_neg(C, P))
    result = mod_zero(P.p, P.e)
    for bit in bin(k)[2:]:
        result = mod_add(C, result, result)
        if bit == "1":
            result = mod_add(C, result, P)
    return result


def multiple_mod_prime_power(
    C: Curve, P: RationalPoint, l: int, p: int, e: int
) -> ModPoint:
    """l*P modulo p^e, without ever forming the exact multiple."""
    return mod_scalar_mul(C, l, reduce_point(C, P, p, e))


def proj_congruent(P: ModPoint, Q: ModPoint, r: int) -> bool:
    if P.p != Q.p:
        raise ValueError("points reduced at different primes")
    if not 1 <= r <= min(P.e, Q.e):
        raise ValueError(f"level {r} exceeds the available precision")
    m = P.p**r
    X1, Y1, Z1 = P.coords
    X2, Y2, Z2 = Q.coords
    return (
        (X1 * Y2 - X2 * Y1) % m == 0
        and (X1 * Z2 - X2 * Z1) % m == 0
        and (Y1 * Z2 - Y2 * Z1) % m == 0
    )


def congruence_level(P: ModPoint, Q: ModPoint) -> int:
    """Largest r <= min precision with P congruent to Q mod p^r (0 if none)."""
    r = 0
    while r < min(P.e, Q.e) and proj_congruent(P, Q, r + 1):
        r += 1
    return r


def count_points(C: Curve, p: int) -> int:
    """|E(F_p)| by summing Legendre symbols over every x mod p."""
    _check_good(C, p)
    # roots[r] = number of y with y^2 = r (mod p)
    roots = [0] * p
    for y in range(p):
        roots[y * y % p] += 1
    a, b = C.a % p, C.b % p
    return 1 + sum(roots[(x * x * x + a * x + b) % p] for x in range(p))


def count_points_legendre(C: Curve, p: int) -> int:
    """Reference count written directly from the Legendre-symbol formula."""
    _check_good(C, p)
    return 1 + sum(1 + legendre(x**3 + C.a * x + C.b, p) for x in range(p))


def mod_order(C: Curve, P: ModPoint, N: int) -> int:
    """Exact order of P given a multiple N of it (normally |E(F_p)|)."""
    order = N
    for q, k in factorint(N).items():
        for _ in range(k):
            if not mod_scalar_mul(C, order // q, P).is_zero:
                break
            order //= q
    return order
