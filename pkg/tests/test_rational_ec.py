from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import as_pair, pt
from oracles import exact_add, exact_order
from sawitness.errors import NotTorsion, SingularCurve, WitnessError
from sawitness.rational_ec import (
    INFINITY,
    Curve,
    PunctureSet,
    RationalPoint,
    add,
    discriminant,
    format_point,
    neg,
    on_curve,
    parse_point,
    primitive_triple,
    real_components,
    scalar_mul,
    torsion_order,
)

MORDELL = Curve(0, 3)
CONG = Curve(-36, 0)
SIX = Curve(0, 1)


def test_on_curve_examples():
    assert on_curve(MORDELL, pt(1, 2))
    assert not on_curve(MORDELL, pt(1, 3))
    assert on_curve(MORDELL, INFINITY)
    assert on_curve(CONG, INFINITY)


def test_add_examples():
    assert add(MORDELL, pt(1, 2), INFINITY) == pt(1, 2)
    assert add(MORDELL, INFINITY, pt(1, 2)) == pt(1, 2)
    assert add(MORDELL, pt(1, 2), pt(1, -2)) == INFINITY
    doubled = add(MORDELL, pt(1, 2), pt(1, 2))
    assert doubled == pt(Fraction(-23, 16), Fraction(-11, 64))
    assert on_curve(MORDELL, doubled)
    assert as_pair(doubled) == exact_add(0, (Fraction(1), Fraction(2)), (Fraction(1), Fraction(2)))


def test_neg_examples():
    assert neg(MORDELL, pt(1, 2)) == pt(1, -2)
    assert neg(MORDELL, INFINITY) == INFINITY
    assert neg(MORDELL, neg(MORDELL, pt(1, 2))) == pt(1, 2)


def test_scalar_mul_examples():
    P = pt(1, 2)
    assert scalar_mul(MORDELL, 0, P) == INFINITY
    assert scalar_mul(MORDELL, 1, P) == P
    assert scalar_mul(MORDELL, 2, P) == pt(Fraction(-23, 16), Fraction(-11, 64))
    assert scalar_mul(MORDELL, -1, P) == pt(1, -2)


def test_discriminant_examples():
    assert discriminant(0, 3) == -3888
    assert discriminant(-36, 0) == 2985984
    with pytest.raises(SingularCurve):
        discriminant(0, 0)
    with pytest.raises(SingularCurve):
        Curve(-3, 2)  # (x - 1)^2 (x + 2)


def test_bad_primes():
    assert MORDELL.bad_primes == {2, 3}
    assert CONG.bad_primes == {2, 3}
    assert Curve(-1, 0).bad_primes == {2}
    for a, b in [(1, 1), (2, -7), (-5, 11), (0, 17)]:
        assert 2 in Curve(a, b).bad_primes


def test_torsion_order_examples():
    assert torsion_order(MORDELL, pt(1, 2)) is None
    assert exact_order(0, (Fraction(1), Fraction(2))) is None
    assert on_curve(SIX, pt(2, 3))
    assert torsion_order(SIX, pt(2, 3)) == 6
    assert exact_order(0, (Fraction(2), Fraction(3))) == 6
    assert torsion_order(CONG, pt(0, 0)) == 2
    assert torsion_order(CONG, INFINITY) == 1


def test_real_components_examples():
    assert real_components(MORDELL) == 1
    assert real_components(CONG) == 2
    assert real_components(Curve(1, 1)) == 1


def test_rationals_are_normalized():
    P = RationalPoint(Fraction(6, -4), Fraction(10, 8))
    assert P.x.denominator == 2 and P.x.numerator == -3
    assert P == pt(Fraction(-3, 2), Fraction(5, 4))


def test_point_text_roundtrip():
    for text in ["inf", "1/1,2/1", "-23/16,-11/64"]:
        assert format_point(parse_point(text)) == text
    assert parse_point("1,2") == pt(1, 2)
    assert parse_point(" INF ") == INFINITY
    assert parse_point("-6/4,3") == pt(Fraction(-3, 2), 3)
    for bad in ["", "1", "1,2,3", "a,b", "1/0,2"]:
        with pytest.raises(ValueError):
            parse_point(bad)


def test_primitive_triple():
    assert primitive_triple(INFINITY) == (0, 1, 0)
    assert primitive_triple(pt(1, 2)) == (1, 2, 1)
    assert primitive_triple(pt(Fraction(-23, 16), Fraction(-11, 64))) == (-92, -11, 64)


def test_puncture_set():
    M = PunctureSet.from_points(CONG, [INFINITY, pt(0, 0), pt(6, 0), pt(-6, 0)])
    assert M.orders == (1, 2, 2, 2)
    assert M.n == 2
    with pytest.raises(NotTorsion):
        PunctureSet.from_points(MORDELL, [pt(1, 2)])
    with pytest.raises(WitnessError):
        PunctureSet.from_points(CONG, [pt(0, 0), pt(0, 0)])
    with pytest.raises(WitnessError):
        PunctureSet.from_points(MORDELL, [pt(1, 3)])


# Group law properties on spans of fixture points.

FIXTURES = [
    (MORDELL, pt(1, 2), [INFINITY]),
    (CONG, pt(-3, 9), [INFINITY, pt(0, 0), pt(6, 0), pt(-6, 0)]),
    (SIX, pt(2, 3), [INFINITY]),
]


@st.composite
def span_points(draw):
    C, Q, torsion = draw(st.sampled_from(FIXTURES))
    pick = lambda: add(
        C,
        scalar_mul(C, draw(st.integers(-3, 3)), Q),
        draw(st.sampled_from(torsion)),
    )
    return C, pick(), pick(), pick()


@settings(max_examples=60, deadline=None)
@given(span_points())
def test_group_axioms(data):
    C, P, R, S = data
    assert add(C, P, R) == add(C, R, P)
    assert add(C, add(C, P, R), S) == add(C, P, add(C, R, S))
    assert add(C, P, INFINITY) == P
    assert add(C, P, neg(C, P)) == INFINITY
    for X in (add(C, P, R), neg(C, P), scalar_mul(C, 3, R)):
        assert on_curve(C, X)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIXTURES), st.integers(-20, 20), st.integers(-20, 20))
def test_scalar_mul_is_additive(fixture, k1, k2):
    C, Q, _ = fixture
    assert scalar_mul(C, k1 + k2, Q) == add(C, scalar_mul(C, k1, Q), scalar_mul(C, k2, Q))


@pytest.mark.parametrize(
    "C, P",
    [(CONG, pt(0, 0)), (CONG, pt(6, 0)), (SIX, pt(2, 3)), (SIX, pt(0, 1)), (SIX, pt(-1, 0)),
     (MORDELL, pt(1, 2)), (CONG, pt(-3, 9))],
)
def test_torsion_order_is_exact(C, P):
    d = torsion_order(C, P)
    if d is None:
        assert all(scalar_mul(C, k, P) != INFINITY for k in range(1, 13))
    else:
        assert scalar_mul(C, d, P) == INFINITY
        assert all(scalar_mul(C, e, P) != INFINITY for e in range(1, d))
