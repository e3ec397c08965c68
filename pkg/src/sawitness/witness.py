"""Construction of a witness that a punctured curve fails strong approximation.

Given a curve E, a point Q of infinite order and a set M of rational torsion
points, the pipeline

1. collects the finite set T of primes (user primes, bad primes, and the
   primes where Q meets some point of M),
2. lists the T-integral points of E minus M up to a search bound,
3. picks the smallest odd good prime v0 outside T at which Q is separated
   from every other listed point,
4. forms the progression l = a (mod v0 * n * |E(F_v0)|) with a coprime to the
   modulus, and samples its first primes,
5. checks the finite congruences that the multiples l*Q must satisfy.

Everything is recorded in a :class:`WitnessCertificate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .arith import isprime, odd_primes, prime_factors, valuation
from .errors import (
    CheckFailed,
    InvalidProgression,
    NoAdmissiblePrime,
    NotTorsion,
    TorsionGenerator,
    WitnessError,
)
from .integral_search import enumerate_T_integral
from .modular_ec import (
    congruence_level,
    count_points,
    multiple_mod_prime_power,
    reduce_point,
)
from .rational_ec import (
    Curve,
    PunctureSet,
    RationalPoint,
    format_point,
    on_curve,
    primitive_triple,
    real_components,
    scalar_mul,
    torsion_order,
)

VERSION = "sa-witness/1"
COMPLETENESS_CAVEAT = (
    "The T-integral point list comes from a bounded search with the recorded "
    "bounds; it is not certified to be complete."
)
T2_T3_NOTE = (
    "T2 and T3 are empty: every puncture is a rational point, so its closure "
    "is a section with trivial residue field extension."
)
DEFAULT_V0_SCAN_LIMIT = 100_000


@dataclass(frozen=True)
class PlaceSetT:
    S_finite: tuple
    bad: tuple
    T1: tuple
    T: tuple
    T2: tuple = ()
    T3: tuple = ()


@dataclass(frozen=True)
class ProgressionSpec:
    v0: int
    q: int
    N: int
    n: int
    a: int
    modulus: int
    samples: tuple

    def validate(self):
        """Raise InvalidProgression unless the recorded values are coherent."""
        if self.modulus != self.q * self.n * self.N:
            raise InvalidProgression(
                f"modulus {self.modulus} != q*n*N = {self.q * self.n * self.N}"
            )
        if math.gcd(self.a, self.modulus) != 1:
            raise InvalidProgression(f"gcd({self.a}, {self.modulus}) != 1")
        for l in self.samples:
            if l % self.modulus != self.a % self.modulus:
                raise InvalidProgression(f"sample {l} is not {self.a} mod {self.modulus}")
            if not isprime(l):
                raise InvalidProgression(f"sample {l} is not prime")


CHECK_NAMES = ("c1", "c2", "c3", "c4", "c5", "c6")


@dataclass(frozen=True)
class CheckReport:
    """Verdicts c1..c6 with the evidence each one was decided on."""

    verdicts: dict
    reduced_generator: str
    residues: tuple  # c1: l*Q mod v0, one per sample
    target_valuation: int  # c2: val_q(n*N)
    valuations: tuple  # c2: val_q(l - 1), one per sample
    torsion_failures: tuple  # c3: "l:m" pairs with l*m != m
    separation_failures: tuple  # c4: listed points that meet Q mod v0
    collisions: tuple  # c5: "p:m" pairs where Q meets a puncture mod p
    r_values: tuple  # c6: r(l), one per sample
    r_star: Optional[int]

    @property
    def passed(self) -> bool:
        return all(self.verdicts[name] for name in CHECK_NAMES)

    def failed(self) -> list:
        return [name for name in CHECK_NAMES if not self.verdicts[name]]


@dataclass(frozen=True)
class WitnessConfig:
    a: int
    b: int
    generator: RationalPoint
    punctures: tuple
    S_finite: tuple = ()
    max_denominator: int = 12
    max_numerator_abs: int = 10_000
    samples: int = 6
    scan_bound: int = 500
    e_max: int = 6
    v0_scan_limit: int = DEFAULT_V0_SCAN_LIMIT
    workers: int = field(default=1, compare=False)


@dataclass(frozen=True)
class WitnessCertificate:
    a: int
    b: int
    disc: int
    real_components: int
    generator: RationalPoint
    punctures: PunctureSet
    places: PlaceSetT
    max_denominator: int
    max_numerator_abs: int
    integral_points: tuple  # generator first
    progression: ProgressionSpec
    scan_bound: int
    e_max: int
    report: CheckReport
    version: str = VERSION
    completeness_caveat: str = COMPLETENESS_CAVEAT

    @property
    def curve(self) -> Curve:
        return Curve(self.a, self.b)


def compute_n(C: Curve, points: Sequence[RationalPoint]) -> int:
    """Least n with n*m = O for every m in ``points``."""
    orders = []
    for m in points:
        order = torsion_order(C, m)
        if order is None:
            raise NotTorsion(f"{format_point(m)} has infinite order")
        orders.append(order)
    return math.lcm(*orders)


def _minor_gcd(P: RationalPoint, R: RationalPoint) -> int:
    X1, Y1, Z1 = primitive_triple(P)
    X2, Y2, Z2 = primitive_triple(R)
    return math.gcd(X1 * Y2 - X2 * Y1, X1 * Z2 - X2 * Z1, Y1 * Z2 - Y2 * Z1)


def compute_T1(C: Curve, Q: RationalPoint, points: Iterable[RationalPoint]) -> set:
    """Primes at which Q reduces to the same point as some m in ``points``.

    Two primitive triples agree mod p exactly when p divides every 2x2 minor,
    so these are the prime divisors of the minors' gcd.
    """
    T1 = set()
    for m in points:
        g = _minor_gcd(Q, m)
        if g == 0:
            raise WitnessError(f"Q coincides with the puncture {format_point(m)}")
        T1.update(prime_factors(g))
    return T1


def assemble_T(
    C: Curve, Q: RationalPoint, M: PunctureSet, S_finite: Iterable[int] = ()
) -> PlaceSetT:
    S = set(S_finite)
    bad = set(C.bad_primes)
    T1 = compute_T1(C, Q, M.points)
    return PlaceSetT(
        S_finite=tuple(sorted(S)),
        bad=tuple(sorted(bad)),
        T1=tuple(sorted(T1)),
        T=tuple(sorted(S | bad | T1)),
    )


def choose_v0(
    C: Curve,
    Q: RationalPoint,
    integral_points: Sequence[RationalPoint],
    T: Iterable[int],
    scan_limit: int = DEFAULT_V0_SCAN_LIMIT,
) -> int:
    """Smallest odd prime of good reduction outside T separating Q from the
    other listed points."""
    T = set(T)
    others = [P for P in integral_points if P != Q]
    for p in odd_primes(scan_limit):
        if p in T or p in C.bad_primes:
            continue
        Qbar = reduce_point(C, Q, p)
        if all(reduce_point(C, P, p) != Qbar for P in others):
            return p
    raise NoAdmissiblePrime(f"no admissible prime below {scan_limit}")


def compute_a(n: int, N: int, q: int) -> int:
    """Residue a with a = 1 (mod n*N) and gcd(a, q*n*N) = 1, for odd prime q."""
    nN = n * N
    if math.gcd(nN + 1, q) == 1:
        a = nN + 1
    else:
        # q | nN+1 and q odd, so q does not divide nN-1 and this is a unit mod q
        a = (q - 1) * nN + 1
    assert math.gcd(a, q * nN) == 1
    return a


def dirichlet_primes(a: int, modulus: int, count: int) -> list:
    """First ``count`` primes l = a (mod modulus), ascending."""
    if math.gcd(a, modulus) != 1:
        raise InvalidProgression(f"gcd({a}, {modulus}) != 1")
    if count < 1:
        raise ValueError("count must be positive")
    l = a % modulus or modulus
    out = []
    while len(out) < count:
        if isprime(l):
            out.append(l)
        l += modulus
    return out


def run_checks(
    C: Curve,
    Q: RationalPoint,
    M: PunctureSet,
    spec: ProgressionSpec,
    T: Iterable[int],
    integral_points: Sequence[RationalPoint],
    scan_bound: int,
    e_max: int,
) -> CheckReport:
    spec.validate()
    T = set(T)
    v0, q = spec.v0, spec.q

    # c1: l*Q = Q mod v0 because |E(F_v0)| divides l - 1
    Qbar = reduce_point(C, Q, v0)
    residues = tuple(multiple_mod_prime_power(C, Q, l, v0, 1) for l in spec.samples)
    c1 = all(R == Qbar for R in residues)

    # c2: val_q(l - 1) is the constant val_q(n*N)
    target = valuation(spec.n * spec.N, q)
    valuations = tuple(valuation(l - 1, q) for l in spec.samples)
    c2 = all(v == target for v in valuations)

    # c3: every puncture is fixed by multiplication by l
    torsion_failures = tuple(
        f"{l}:{format_point(m)}"
        for l in spec.samples
        for m, order in zip(M.points, M.orders)
        if scalar_mul(C, l % order, m) != m
    )

    # c4: Q is separated from the other listed points at v0
    separation_failures = tuple(
        format_point(P)
        for P in integral_points
        if P != Q and reduce_point(C, P, v0) == Qbar
    )

    # c5: off T, Q never meets a puncture
    collisions = []
    for p in odd_primes(scan_bound):
        if p in T or p in C.bad_primes:
            continue
        Qp = reduce_point(C, Q, p)
        collisions.extend(
            f"{p}:{format_point(m)}" for m in M.points if reduce_point(C, m, p) == Qp
        )

    # c6: the level r at which l*Q meets Q mod v0^r does not depend on l
    Qhigh = reduce_point(C, Q, v0, e_max)
    r_values = tuple(
        congruence_level(multiple_mod_prime_power(C, Q, l, v0, e_max), Qhigh)
        for l in spec.samples
    )
    constant = len(set(r_values)) == 1 and r_values[0] >= 1
    r_star = r_values[0] if constant else None

    verdicts = {
        "c1": c1,
        "c2": c2,
        "c3": not torsion_failures,
        "c4": not separation_failures,
        "c5": not collisions,
        "c6": constant,
    }
    return CheckReport(
        verdicts=verdicts,
        reduced_generator=str(Qbar),
        residues=tuple(str(R) for R in residues),
        target_valuation=target,
        valuations=valuations,
        torsion_failures=torsion_failures,
        separation_failures=separation_failures,
        collisions=tuple(collisions),
        r_values=r_values,
        r_star=r_star,
    )


def _validate_inputs(C: Curve, Q: RationalPoint, punctures) -> PunctureSet:
    if not on_curve(C, Q):
        raise WitnessError(f"generator {format_point(Q)} is not on the curve")
    M = PunctureSet.from_points(C, punctures)
    if Q.is_infinity or torsion_order(C, Q) is not None:
        raise TorsionGenerator(f"generator {format_point(Q)} has finite order")
    return M


def ordered_integral_points(C, Q, M, T, max_denominator, max_numerator_abs, workers=1):
    """Bounded T-integral list with Q moved to the front."""
    found = [
        t.point
        for t in enumerate_T_integral(
            C, M.points, T, max_denominator, max_numerator_abs, workers=workers
        )
    ]
    if Q not in found:
        raise WitnessError(
            f"generator {format_point(Q)} is not T-integral within the search bounds"
        )
    return (Q,) + tuple(P for P in found if P != Q)


def build_witness(config: WitnessConfig) -> WitnessCertificate:
    C = Curve(config.a, config.b)
    Q = config.generator
    M = _validate_inputs(C, Q, config.punctures)
    n = compute_n(C, M.points)
    places = assemble_T(C, Q, M, config.S_finite)
    points = ordered_integral_points(
        C, Q, M, places.T, config.max_denominator, config.max_numerator_abs,
        workers=config.workers,
    )
    v0 = choose_v0(C, Q, points, places.T, config.v0_scan_limit)
    N = count_points(C, v0)
    a = compute_a(n, N, v0)
    modulus = v0 * n * N
    spec = ProgressionSpec(
        v0=v0, q=v0, N=N, n=n, a=a, modulus=modulus,
        samples=tuple(dirichlet_primes(a, modulus, config.samples)),
    )
    report = run_checks(C, Q, M, spec, places.T, points, config.scan_bound, config.e_max)
    if not report.passed:
        raise CheckFailed(report)
    return WitnessCertificate(
        a=C.a,
        b=C.b,
        disc=C.disc,
        real_components=real_components(C),
        generator=Q,
        punctures=M,
        places=places,
        max_denominator=config.max_denominator,
        max_numerator_abs=config.max_numerator_abs,
        integral_points=points,
        progression=spec,
        scan_bound=config.scan_bound,
        e_max=config.e_max,
        report=report,
    )
