from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from degdet.errors import ParseError
from degdet.fields import (
    GF,
    MINUS_INF,
    QQ,
    LaurentPoly,
    Polynomial,
    RationalFunction,
    RationalFunctionField,
    deg,
    field_from_spec,
    field_to_spec,
    laurent_arith,
    parse_laurent,
    parse_rational,
    proper_leading,
)

P = GF(10007)
FIELDS = [GF(2), GF(3), P, QQ]


def lp(field, d: dict):
    return LaurentPoly.from_dict(field, d)


laurent_dicts = st.dictionaries(st.integers(-4, 4), st.integers(-20, 20), max_size=5)
polys = st.lists(st.integers(-9, 9), min_size=1, max_size=4)


def rat(field, num, den):
    d = Polynomial(field, den)
    if d.is_zero():
        d = Polynomial(field, [1])
    return RationalFunction(Polynomial(field, num), d)


# ---------------------------------------------------------------- sentinel


def test_minus_inf_is_below_every_int():
    assert MINUS_INF < -10**30
    assert not MINUS_INF > 0
    assert MINUS_INF + 5 is MINUS_INF
    assert max(MINUS_INF, -3) == -3
    assert str(MINUS_INF) == "-inf"


# ---------------------------------------------------------------- scalars


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        GF(10)


@pytest.mark.parametrize("field", FIELDS)
def test_inverse(field):
    for x in (1, 2, -1, 5):
        x = field(x)
        if not field.is_zero(x):
            assert field(x * field.inv(x)) == field.one


def test_rational_parse_exact():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert P.parse("1/2") == P(5004)


def test_field_spec_roundtrip():
    for f in FIELDS:
        assert field_from_spec(field_to_spec(f)) == f
    with pytest.raises(ParseError):
        field_from_spec({"kind": "reals"})


# ---------------------------------------------------------------- degrees


def test_degree_examples():
    assert deg(parse_rational("t^2 + 1", QQ)) == 2
    assert deg(RationalFunction.constant(QQ, 0)) is MINUS_INF
    assert deg(parse_rational("(t^3 + t)/(t - 1)", QQ)) == 2


def test_proper_leading_examples():
    assert proper_leading(parse_rational("(2*t + 1)/(t + 3)", P)) == 2
    assert proper_leading(parse_rational("t^-1", P)) == 0
    assert proper_leading(RationalFunction.constant(P, 5)) == 5


def test_laurent_arith_examples():
    assert laurent_arith(parse_laurent("1 + t^-1", QQ), 1, "shift") == parse_laurent("t + 1", QQ)
    assert laurent_arith(parse_laurent("t^-1", QQ), parse_laurent("t", QQ), "mul") == lp(QQ, {0: 1})
    s = laurent_arith(parse_laurent("1 + t^-2", QQ), lp(QQ, {0: -1}), "add")
    assert s == lp(QQ, {-2: 1}) and s.deg == -2


# ---------------------------------------------------------------- parsing


@pytest.mark.parametrize("text,expected", [
    ("3*t^2 - 1 + 2*t^-1", {2: 3, 0: -1, -1: 2}),
    ("t", {1: 1}),
    ("-t^-3", {-3: -1}),
    ("0", {}),
    ("1/2*t", {1: Fraction(1, 2)}),
    (" t^2 +  t^2 ", {2: 2}),
])
def test_parse_laurent(text, expected):
    assert parse_laurent(text, QQ) == lp(QQ, expected)


@pytest.mark.parametrize("text,pos", [("3*t^2 + *t", 5), ("", 0), ("t^", 0), ("2**t", 0)])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_laurent(text, QQ)
    assert exc.value.position == pos


def test_parse_rational_forms():
    r = parse_rational("(t^2 - 1)/(t - 1)", QQ)
    assert r == parse_rational("t + 1", QQ)
    with pytest.raises(ParseError):
        parse_rational("(t)/(0)", QQ)
    with pytest.raises(ParseError):
        parse_rational("(t", QQ)


@given(laurent_dicts)
def test_format_parse_roundtrip(d):
    for f in (QQ, P):
        x = lp(f, d)
        assert parse_laurent(str(x), f) == x


# ---------------------------------------------------------------- properties


@settings(max_examples=60)
@given(laurent_dicts, laurent_dicts, laurent_dicts)
def test_laurent_ring_axioms(a, b, c):
    for f in (QQ, GF(3)):
        x, y, z = lp(f, a), lp(f, b), lp(f, c)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + lp(f, {}) == x
        assert x * lp(f, {0: 1}) == x
        assert x - x == lp(f, {})


@settings(max_examples=60)
@given(polys, polys, polys, polys, polys, polys)
def test_rational_field_axioms(n1, d1, n2, d2, n3, d3):
    for f in (QQ, P):
        a, b, c = rat(f, n1, d1), rat(f, n2, d2), rat(f, n3, d3)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == RationalFunction.constant(f, 1)


@settings(max_examples=80)
@given(polys, polys, polys, polys)
def test_degree_is_a_valuation(n1, d1, n2, d2):
    a, b = rat(QQ, n1, d1), rat(QQ, n2, d2)
    if a.is_zero() or b.is_zero():
        return
    assert deg(a * b) == deg(a) + deg(b)
    s = a + b
    if deg(a) != deg(b):
        assert deg(s) == max(deg(a), deg(b))
    else:
        assert deg(s) <= deg(a)


@settings(max_examples=80)
@given(polys, polys)
def test_proper_leading_vanishes_iff_negative_degree(num, den):
    r = rat(P, num, den)
    if r.is_zero() or r.deg > 0:
        return
    assert (proper_leading(r) == 0) == (r.deg < 0)


def test_rational_function_field_interface():
    kt = RationalFunctionField(P)
    x = kt("t^2")
    assert kt.is_zero(kt.zero) and not kt.is_zero(x)
    assert kt.inv(x) == parse_rational("t^-2", P)
