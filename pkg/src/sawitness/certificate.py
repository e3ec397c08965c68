"""Certificate file format and an independent verifier.

A certificate is a single JSON document with a fixed key order, two-space
indentation and a trailing newline.  Every integer is written as a decimal
string and every point as ``"inf"`` or ``"xn/xd,yn/yd"``::

    {
      "version": "sa-witness/1",
      "curve": {"a", "b", "disc", "real_components"},
      "generator": point,
      "punctures": {"points": [point], "orders": [int]},
      "places": {"S_finite", "bad", "T1", "T2", "T3", "T", "note"},
      "search": {"max_denominator", "max_numerator_abs", "points": [point]},
      "progression": {"v0", "q", "N", "n", "a", "modulus", "samples"},
      "checks": {"scan_bound", "e_max", "verdicts", "evidence"},
      "completeness_caveat": str
    }

:func:`verify` recomputes every derived field from the curve, the generator,
the punctures, ``S_finite`` and the recorded bounds, and never reads a
recorded intermediate as an input.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Any, Optional

from .arith import isprime, odd_primes, prime_factors
from .errors import MalformedCertificate, SingularCurve, WitnessError
from .modular_ec import count_points, reduce_point
from .rational_ec import (
    Curve,
    PunctureSet,
    format_point,
    on_curve,
    parse_point,
    real_components,
    torsion_order,
)
from .witness import (
    CHECK_NAMES,
    COMPLETENESS_CAVEAT,
    DEFAULT_V0_SCAN_LIMIT,
    T2_T3_NOTE,
    VERSION,
    CheckReport,
    PlaceSetT,
    ProgressionSpec,
    WitnessCertificate,
    compute_a,
    compute_T1,
    ordered_integral_points,
    run_checks,
)

__all__ = [
    "WitnessCertificate",
    "serialize",
    "parse",
    "verify",
    "Verdict",
    "REASON_CODES",
]

REASON_CODES = (
    "WRONG_CURVE",
    "GENERATOR_TORSION",
    "NOT_ON_CURVE",
    "NOT_TORSION",
    "WRONG_ORDER",
    "WRONG_LCM",
    "WRONG_BAD",
    "T1_MISMATCH",
    "WRONG_T",
    "INTEGRAL_MISMATCH",
    "V0_INADMISSIBLE",
    "WRONG_Q",
    "WRONG_N",
    "WRONG_A",
    "WRONG_MODULUS",
    "BAD_SAMPLE",
    "CHECK_C1",
    "CHECK_C2",
    "CHECK_C3",
    "CHECK_C4",
    "CHECK_C5",
    "CHECK_C6",
)


_DECIMAL = re.compile(r"-?(0|[1-9][0-9]*)")


def _int(n: int) -> str:
    return str(n)


def _ints(xs) -> list:
    return [str(x) for x in xs]


def _report_to_dict(r: CheckReport) -> dict:
    return {
        "verdicts": {name: r.verdicts[name] for name in CHECK_NAMES},
        "evidence": {
            "reduced_generator": r.reduced_generator,
            "residues": list(r.residues),
            "target_valuation": _int(r.target_valuation),
            "valuations": _ints(r.valuations),
            "torsion_failures": list(r.torsion_failures),
            "separation_failures": list(r.separation_failures),
            "collisions": list(r.collisions),
            "r_values": _ints(r.r_values),
            "r_star": None if r.r_star is None else _int(r.r_star),
        },
    }


def to_dict(cert: WitnessCertificate) -> dict:
    pl, pr = cert.places, cert.progression
    checks = {"scan_bound": _int(cert.scan_bound), "e_max": _int(cert.e_max)}
    checks.update(_report_to_dict(cert.report))
    return {
        "version": cert.version,
        "curve": {
            "a": _int(cert.a),
            "b": _int(cert.b),
            "disc": _int(cert.disc),
            "real_components": _int(cert.real_components),
        },
        "generator": format_point(cert.generator),
        "punctures": {
            "points": [format_point(m) for m in cert.punctures.points],
            "orders": _ints(cert.punctures.orders),
        },
        "places": {
            "S_finite": _ints(pl.S_finite),
            "bad": _ints(pl.bad),
            "T1": _ints(pl.T1),
            "T2": _ints(pl.T2),
            "T3": _ints(pl.T3),
            "T": _ints(pl.T),
            "note": T2_T3_NOTE,
        },
        "search": {
            "max_denominator": _int(cert.max_denominator),
            "max_numerator_abs": _int(cert.max_numerator_abs),
            "points": [format_point(P) for P in cert.integral_points],
        },
        "progression": {
            "v0": _int(pr.v0),
            "q": _int(pr.q),
            "N": _int(pr.N),
            "n": _int(pr.n),
            "a": _int(pr.a),
            "modulus": _int(pr.modulus),
            "samples": _ints(pr.samples),
        },
        "checks": checks,
        "completeness_caveat": cert.completeness_caveat,
    }


def serialize(cert: WitnessCertificate) -> bytes:
    return (json.dumps(to_dict(cert), indent=2, ensure_ascii=True) + "\n").encode("ascii")


class _Reader:
    """Typed field access that reports the failing path."""

    def __init__(self, doc):
        self.doc = doc

    def get(self, path: str) -> Any:
        node = self.doc
        for key in path.split("."):
            if not isinstance(node, dict) or key not in node:
                raise MalformedCertificate(path, "missing field")
            node = node[key]
        return node

    def int(self, path: str, node=None) -> int:
        value = self.get(path) if node is None else node
        if not isinstance(value, str):
            raise MalformedCertificate(path, f"expected a decimal string, got {value!r}")
        if not _DECIMAL.fullmatch(value):
            raise MalformedCertificate(path, f"not a decimal integer: {value!r}")
        return int(value)

    def int_list(self, path: str) -> tuple:
        value = self.get(path)
        if not isinstance(value, list):
            raise MalformedCertificate(path, "expected a list")
        return tuple(self.int(f"{path}[{i}]", v) for i, v in enumerate(value))

    def str(self, path: str, node=None) -> str:
        value = self.get(path) if node is None else node
        if not isinstance(value, str):
            raise MalformedCertificate(path, f"expected a string, got {value!r}")
        return value

    def str_list(self, path: str) -> tuple:
        value = self.get(path)
        if not isinstance(value, list):
            raise MalformedCertificate(path, "expected a list")
        return tuple(self.str(f"{path}[{i}]", v) for i, v in enumerate(value))

    def point(self, path: str, node=None):
        text = self.str(path, node)
        try:
            return parse_point(text)
        except ValueError as exc:
            raise MalformedCertificate(path, str(exc)) from None

    def point_list(self, path: str) -> tuple:
        return tuple(
            self.point(f"{path}[{i}]", v) for i, v in enumerate(self.str_list(path))
        )


def parse(data: bytes | str) -> WitnessCertificate:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedCertificate("<document>", str(exc)) from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"line {exc.lineno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise MalformedCertificate("<document>", "top level must be a map")
    rd = _Reader(doc)

    version = rd.str("version")
    if version != VERSION:
        raise MalformedCertificate("version", f"unsupported version {version!r}")

    verdicts = rd.get("checks.verdicts")
    if not isinstance(verdicts, dict) or set(verdicts) != set(CHECK_NAMES):
        raise MalformedCertificate("checks.verdicts", "expected exactly c1..c6")
    for name, value in verdicts.items():
        if not isinstance(value, bool):
            raise MalformedCertificate(f"checks.verdicts.{name}", "expected a boolean")
    r_star = rd.get("checks.evidence.r_star")
    report = CheckReport(
        verdicts={name: verdicts[name] for name in CHECK_NAMES},
        reduced_generator=rd.str("checks.evidence.reduced_generator"),
        residues=rd.str_list("checks.evidence.residues"),
        target_valuation=rd.int("checks.evidence.target_valuation"),
        valuations=rd.int_list("checks.evidence.valuations"),
        torsion_failures=rd.str_list("checks.evidence.torsion_failures"),
        separation_failures=rd.str_list("checks.evidence.separation_failures"),
        collisions=rd.str_list("checks.evidence.collisions"),
        r_values=rd.int_list("checks.evidence.r_values"),
        r_star=None if r_star is None else rd.int("checks.evidence.r_star"),
    )

    n = rd.int("progression.n")
    punctures = PunctureSet(
        points=rd.point_list("punctures.points"),
        orders=rd.int_list("punctures.orders"),
        n=n,
    )
    places = PlaceSetT(
        S_finite=rd.int_list("places.S_finite"),
        bad=rd.int_list("places.bad"),
        T1=rd.int_list("places.T1"),
        T=rd.int_list("places.T"),
        T2=rd.int_list("places.T2"),
        T3=rd.int_list("places.T3"),
    )
    rd.str("places.note")
    progression = ProgressionSpec(
        v0=rd.int("progression.v0"),
        q=rd.int("progression.q"),
        N=rd.int("progression.N"),
        n=n,
        a=rd.int("progression.a"),
        modulus=rd.int("progression.modulus"),
        samples=rd.int_list("progression.samples"),
    )
    return WitnessCertificate(
        a=rd.int("curve.a"),
        b=rd.int("curve.b"),
        disc=rd.int("curve.disc"),
        real_components=rd.int("curve.real_components"),
        generator=rd.point("generator"),
        punctures=punctures,
        places=places,
        max_denominator=rd.int("search.max_denominator"),
        max_numerator_abs=rd.int("search.max_numerator_abs"),
        integral_points=rd.point_list("search.points"),
        progression=progression,
        scan_bound=rd.int("checks.scan_bound"),
        e_max=rd.int("checks.e_max"),
        report=report,
        version=version,
        completeness_caveat=rd.str("completeness_caveat"),
    )


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: Optional[str] = None
    detail: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "ACCEPT"
        return f"REJECT {self.reason}: {self.detail}"


class _Reject(Exception):
    def __init__(self, reason, detail):
        super().__init__(detail)
        self.reason = reason
        self.detail = detail


def _expect(ok, reason, detail):
    if not ok:
        raise _Reject(reason, detail)


def _smallest_admissible(C, Q, points, T, limit):
    others = [P for P in points if P != Q]
    for p in odd_primes(limit):
        if p in T:
            continue
        Qbar = reduce_point(C, Q, p)
        if all(reduce_point(C, P, p) != Qbar for P in others):
            return p
    return None


def _verify(cert: WitnessCertificate):
    try:
        C = Curve(cert.a, cert.b)
    except (SingularCurve, TypeError) as exc:
        raise _Reject("WRONG_CURVE", str(exc))
    _expect(cert.disc == C.disc, "WRONG_CURVE", f"discriminant is {C.disc}")
    _expect(
        cert.real_components == real_components(C),
        "WRONG_CURVE",
        f"real component count is {real_components(C)}",
    )

    Q = cert.generator
    _expect(on_curve(C, Q), "NOT_ON_CURVE", f"generator {format_point(Q)}")
    _expect(
        not Q.is_infinity and torsion_order(C, Q) is None,
        "GENERATOR_TORSION",
        f"generator {format_point(Q)} has finite order",
    )

    M = cert.punctures
    _expect(len(M.points) > 0, "NOT_TORSION", "empty puncture set")
    _expect(len(set(M.points)) == len(M.points), "WRONG_ORDER", "repeated puncture")
    _expect(len(M.orders) == len(M.points), "WRONG_ORDER", "one order per puncture")
    orders = []
    for m, recorded in zip(M.points, M.orders):
        _expect(on_curve(C, m), "NOT_ON_CURVE", f"puncture {format_point(m)}")
        order = torsion_order(C, m)
        _expect(order is not None, "NOT_TORSION", f"puncture {format_point(m)}")
        _expect(order == recorded, "WRONG_ORDER", f"{format_point(m)} has order {order}")
        orders.append(order)
    n = math.lcm(*orders)
    _expect(cert.progression.n == n, "WRONG_LCM", f"lcm of orders is {n}")

    pl = cert.places
    bad = tuple(prime_factors(C.disc))
    _expect(pl.bad == bad, "WRONG_BAD", f"bad primes are {list(bad)}")
    T1 = tuple(sorted(compute_T1(C, Q, M.points)))
    _expect(pl.T1 == T1, "T1_MISMATCH", f"T1 is {list(T1)}")
    S = pl.S_finite
    _expect(
        S == tuple(sorted(set(S))) and all(isprime(p) for p in S),
        "WRONG_T",
        "S_finite must be a sorted list of distinct primes",
    )
    _expect(pl.T2 == () and pl.T3 == (), "WRONG_T", "T2 and T3 must be empty")
    T = tuple(sorted(set(S) | set(bad) | set(T1)))
    _expect(pl.T == T, "WRONG_T", f"T is {list(T)}")

    _expect(
        cert.max_denominator >= 1 and cert.max_numerator_abs >= 1,
        "INTEGRAL_MISMATCH",
        "search bounds must be positive",
    )
    try:
        points = ordered_integral_points(
            C, Q, M, T, cert.max_denominator, cert.max_numerator_abs
        )
    except WitnessError as exc:
        raise _Reject("INTEGRAL_MISMATCH", str(exc))
    _expect(
        tuple(cert.integral_points) == points,
        "INTEGRAL_MISMATCH",
        "listed T-integral points differ from the bounded search",
    )

    pr = cert.progression
    _expect(pr.v0 > 2 and isprime(pr.v0), "V0_INADMISSIBLE", f"{pr.v0} is not an odd prime")
    _expect(
        pr.v0 <= DEFAULT_V0_SCAN_LIMIT,
        "V0_INADMISSIBLE",
        f"{pr.v0} exceeds the scan limit {DEFAULT_V0_SCAN_LIMIT}",
    )
    v0 = _smallest_admissible(C, Q, points, set(T), pr.v0)
    _expect(v0 == pr.v0, "V0_INADMISSIBLE", f"smallest admissible prime is {v0}")
    _expect(pr.q == v0, "WRONG_Q", f"residue characteristic is {v0}")

    N = count_points(C, v0)
    _expect(pr.N == N, "WRONG_N", f"|E(F_{v0})| = {N}")
    a = compute_a(n, N, v0)
    _expect(pr.a == a, "WRONG_A", f"a = {a}")
    modulus = v0 * n * N
    _expect(pr.modulus == modulus, "WRONG_MODULUS", f"modulus = {modulus}")

    _expect(len(pr.samples) >= 1, "BAD_SAMPLE", "no samples")
    expected_samples = []
    l = a
    while len(expected_samples) < len(pr.samples):
        if isprime(l):
            expected_samples.append(l)
        l += modulus
    for got, want in zip(pr.samples, expected_samples):
        _expect(got == want, "BAD_SAMPLE", f"expected sample {want}, found {got}")

    _expect(cert.scan_bound >= 1 and cert.e_max >= 1, "CHECK_C5", "scan bounds must be positive")
    spec = ProgressionSpec(v0, v0, N, n, a, modulus, tuple(expected_samples))
    fresh = run_checks(C, Q, M, spec, T, points, cert.scan_bound, cert.e_max)
    recorded = cert.report
    evidence = {
        "c1": lambda r: (r.reduced_generator, r.residues),
        "c2": lambda r: (r.target_valuation, r.valuations),
        "c3": lambda r: r.torsion_failures,
        "c4": lambda r: r.separation_failures,
        "c5": lambda r: r.collisions,
        "c6": lambda r: (r.r_values, r.r_star),
    }
    for name in CHECK_NAMES:
        code = "CHECK_" + name.upper()
        _expect(fresh.verdicts[name], code, f"check {name} fails on recomputation")
        _expect(recorded.verdicts[name], code, f"check {name} recorded as failed")
        _expect(
            evidence[name](fresh) == evidence[name](recorded),
            code,
            f"recorded evidence for {name} does not match recomputation",
        )
    _expect(
        cert.completeness_caveat == COMPLETENESS_CAVEAT,
        "INTEGRAL_MISMATCH",
        "completeness caveat altered",
    )


def verify(cert: WitnessCertificate) -> Verdict:
    """Re-derive every recorded quantity; Accept only if all of them match."""
    try:
        _verify(cert)
    except _Reject as rej:
        return Verdict(False, rej.reason, rej.detail)
    return Verdict(True)
