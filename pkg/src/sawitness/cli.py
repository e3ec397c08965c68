"""Command-line interface: ``sa-witness`` / ``python -m sawitness``.

Exit codes: 0 on success or Accept, 1 on a failed check or Reject, 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import __version__
from .arith import isprime
from .certificate import parse, serialize, verify
from .errors import CheckFailed, MalformedCertificate, NoAdmissiblePrime, WitnessError
from .integral_search import enumerate_T_integral
from .modular_ec import count_points
from .rational_ec import (
    Curve,
    PunctureSet,
    format_point,
    on_curve,
    parse_point,
    real_components,
    torsion_order,
)
from .witness import WitnessConfig, build_witness

THREADS_ENV = "SA_WITNESS_THREADS"


def _int_pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers 'x,y', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not integers: {text!r}") from None


def _curve(text):
    a, b = _int_pair(text)
    try:
        return Curve(a, b)
    except WitnessError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point(text):
    try:
        return parse_point(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _prime_list(text):
    if not text.strip():
        return ()
    try:
        primes = tuple(sorted({int(p) for p in text.split(",")}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    for p in primes:
        if not isprime(p):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    return primes


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _bounds(text):
    D, H = _int_pair(text)
    if D < 1 or H < 1:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return D, H


def _threads():
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError:
        raise WitnessError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None


class _Parser(argparse.ArgumentParser):
    """Treats tokens such as ``-3,9`` or ``-23/16,11/64`` as values, not flags."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?(,-?\d+(/\d+)?)?$")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sa-witness",
        description="Build and verify strong-approximation witness certificates "
        "for punctured elliptic curves y^2 = x^3 + a*x + b over Q.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="discriminant, bad primes, components, torsion")
    p.add_argument("--curve", type=_curve, required=True, metavar="a,b")
    p.add_argument("--point", type=_point, metavar="x,y")

    p = sub.add_parser("count", help="number of points modulo a good prime")
    p.add_argument("--curve", type=_curve, required=True, metavar="a,b")
    p.add_argument("--prime", type=_positive, required=True, metavar="p")

    p = sub.add_parser("integral", help="bounded list of T-integral points")
    p.add_argument("--curve", type=_curve, required=True, metavar="a,b")
    p.add_argument("--puncture", type=_point, action="extend", nargs="+", metavar="P")
    p.add_argument("--T", dest="T", type=_prime_list, required=True, metavar="p1,p2")
    p.add_argument("--bounds", type=_bounds, default=(12, 10_000), metavar="D,H")

    w = sub.add_parser("witness", help="build or verify a certificate")
    wsub = w.add_subparsers(dest="action", required=True)
    b = wsub.add_parser("build", help="run the construction and write a certificate")
    b.add_argument("--curve", type=_curve, required=True, metavar="a,b")
    b.add_argument("--gen", type=_point, required=True, metavar="x,y")
    b.add_argument("--puncture", type=_point, action="extend", nargs="+",
                   required=True, metavar="P")
    b.add_argument("--S", dest="S", type=_prime_list, default=(), metavar="p1,p2")
    b.add_argument("--bounds", type=_bounds, default=(12, 10_000), metavar="D,H")
    b.add_argument("--samples", type=_positive, default=6)
    b.add_argument("--scan", type=_positive, default=500)
    b.add_argument("--emax", type=_positive, default=6)
    b.add_argument("-o", "--output", required=True, metavar="FILE")

    v = wsub.add_parser("verify", help="independently re-verify a certificate")
    v.add_argument("file", metavar="FILE")
    return parser


def _analyze(args):
    C = args.curve
    print(f"curve: y^2 = x^3 + {C.a}x + {C.b}")
    print(f"discriminant: {C.disc}")
    print(f"bad primes: {','.join(map(str, sorted(C.bad_primes)))}")
    print(f"real components: {real_components(C)}")
    if args.point is not None:
        if not on_curve(C, args.point):
            print(f"error: {format_point(args.point)} is not on the curve", file=sys.stderr)
            return 2
        order = torsion_order(C, args.point)
        print(f"torsion order: {'Infinite' if order is None else order}")
    return 0


def _count(args):
    C, p = args.curve, args.prime
    if not isprime(p):
        print(f"error: {p} is not prime", file=sys.stderr)
        return 2
    print(count_points(C, p))
    return 0


def _integral(args):
    C = args.curve
    punctures = args.puncture or [parse_point("inf")]
    M = PunctureSet.from_points(C, punctures)
    D, H = args.bounds
    found = enumerate_T_integral(C, M.points, args.T, D, H, workers=_threads())
    for t in found:
        print(format_point(t.point))
    print(f"# {len(found)} points, bounds D={D} H={H}, not certified complete",
          file=sys.stderr)
    return 0


def _build(args):
    D, H = args.bounds
    config = WitnessConfig(
        a=args.curve.a,
        b=args.curve.b,
        generator=args.gen,
        punctures=tuple(args.puncture),
        S_finite=args.S,
        max_denominator=D,
        max_numerator_abs=H,
        samples=args.samples,
        scan_bound=args.scan,
        e_max=args.emax,
        workers=_threads(),
    )
    try:
        cert = build_witness(config)
    except (CheckFailed, NoAdmissiblePrime) as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return 1
    with open(args.output, "wb") as fh:
        fh.write(serialize(cert))
    pr = cert.progression
    print(f"T = {{{', '.join(map(str, cert.places.T))}}}")
    print(f"v0 = {pr.v0}  N = {pr.N}  n = {pr.n}  a = {pr.a}  modulus = {pr.modulus}")
    print(f"samples = {list(pr.samples)}")
    print(f"r_star = {cert.report.r_star}")
    print(f"wrote {args.output}")
    return 0


def _verify(args):
    try:
        with open(args.file, "rb") as fh:
            cert = parse(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MalformedCertificate as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return 2
    verdict = verify(cert)
    print(verdict)
    return 0 if verdict.accepted else 1


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = {
        "analyze": _analyze,
        "count": _count,
        "integral": _integral,
    }.get(args.command)
    if handler is None:
        handler = _build if args.action == "build" else _verify
    try:
        return handler(args)
    except WitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
