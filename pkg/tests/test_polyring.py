from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from samuel.errors import ParseError, RingMismatchError
from samuel.polyring import (
    GREVLEX,
    INF,
    LEX,
    FieldSpec,
    OrderValue,
    PolyRing,
    Polynomial,
    QQ,
    bareiss_det,
    order_at_monomial_prime,
    poly_arith,
    resultant_in_var,
    substitute,
)

R = PolyRing(QQ, ("x", "y", "z"))
F2 = PolyRing(FieldSpec(2), ("x", "y"))


def P(text, ring=R):
    return ring.parse(text)


def test_field_spec_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(4)
    assert FieldSpec(7)(-1) == 6
    assert FieldSpec(7).inv(3) == 5


def test_arith_examples():
    assert poly_arith(P("x+y"), P("-x"), "add") == P("y")
    assert poly_arith(P("x+y", F2), P("x+y", F2), "mul") == P("x^2+y^2", F2)
    assert poly_arith(R.zero(), P("x^3 - y"), "mul").is_zero()


def test_mismatched_rings():
    with pytest.raises(RingMismatchError):
        P("x") + P("x", F2)


def test_substitute_examples():
    f = P("x^2 + y^4 + y^5", F2)
    assert substitute(f, {"x": P("x + y^2", F2)}) == P("x^2 + y^5", F2)
    assert substitute(P("x*y - z"), {}) == P("x*y - z")
    W = PolyRing(FieldSpec(3), ("x", "y1", "y2"))
    g = W.parse("x^3 - y1^3*y2")
    assert substitute(g, {"y2": W.parse("y2 + 2")}) == W.parse("x^3 - y1^3*y2 - 2*y1^3")


def test_order_at_monomial_prime():
    S = PolyRing(QQ, ("y1", "y2"))
    f = S.parse("y1^2*y2")
    assert order_at_monomial_prime(f, ["y1"]) == 2
    assert order_at_monomial_prime(f, ["y1", "y2"]) == 3
    assert order_at_monomial_prime(S.zero(), ["y1"]).is_infinite


def test_resultant_examples():
    Rw = PolyRing(QQ, ("y", "z", "w"))
    assert resultant_in_var(Rw.parse("z^2 - y^3"), Rw.parse("w - z"), "z") == Rw.parse("w^2 - y^3")
    Ra = PolyRing(QQ, ("a", "z", "w"))
    assert resultant_in_var(Ra.parse("z - a"), Ra.parse("w - z"), "z") == Ra.parse("w - a")
    Ruv = PolyRing(QQ, ("u", "v", "w", "t"))
    res = resultant_in_var(Ruv.parse("w^2 - u*w + v^3"), Ruv.parse("t - v*w"), "w")
    assert res == Ruv.parse("t^2 - u*v*t + v^5")


def test_resultant_needs_variable():
    with pytest.raises(ValueError):
        resultant_in_var(P("x"), P("y"), "z")


def test_bareiss_matches_cofactor():
    m = [[P("x"), P("1"), R.zero()], [P("y"), P("x"), P("1")], [P("z"), R.zero(), P("x")]]
    assert bareiss_det(m) == P("x^3 - x*y + z")


def test_order_value_arithmetic():
    a, b = OrderValue(Fraction(3, 2)), OrderValue(2)
    assert a < b < INF
    assert (a + INF).is_infinite
    assert str(a * 2) == "3"
    assert str(a) == "3/2" and str(INF) == "inf"
    assert OrderValue(Fraction(6, 4)) == Fraction(3, 2)


def test_parser_and_printing():
    assert str(P("-(x - y)^2")) == "-x^2 + 2*x*y - y^2"
    assert P("x**2") == P("x^2")
    for bad in ("x +", "q", "x^y", "(x"):
        with pytest.raises(ParseError):
            P(bad)


def test_monomial_orders():
    f = P("x*z^2 + y^3")
    assert f.leading_monomial(GREVLEX) == (0, 3, 0)
    assert f.leading_monomial(LEX) == (1, 0, 2)


# -- properties -----------------------------------------------------------

coeff = st.integers(-4, 4)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coeff, max_size=5).map(lambda d: Polynomial(R, {e: Fraction(c) for e, c in d.items()}))

exps2 = st.tuples(st.integers(0, 3), st.integers(0, 3))


def f_polys(p):
    Rp = PolyRing(FieldSpec(p), ("x", "y"))
    return st.dictionaries(exps2, st.integers(0, p - 1), max_size=5).map(
        lambda d: Polynomial(Rp, {e: c for e, c in d.items()}))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_substitute_is_homomorphism(a, b, s):
    sub = {"x": s, "y": P("y + 2*z")}
    assert substitute(a * b, sub) == substitute(a, sub) * substitute(b, sub)
    assert substitute(a + b, sub) == substitute(a, sub) + substitute(b, sub)


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.sampled_from([["x"], ["x", "y"], ["y", "z"], ["x", "y", "z"]]))
def test_order_axioms_in_polynomial_ring(a, b, q):
    oa, ob = a.order_at(q), b.order_at(q)
    assert (a + b).order_at(q) >= min(oa, ob)
    assert (a * b).order_at(q) == oa + ob


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius(p):
    @settings(max_examples=30, deadline=None)
    @given(f_polys(p), f_polys(p))
    def check(a, b):
        assert (a + b) ** p == a ** p + b ** p

    check()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_resultant_against_sympy(fc, gc):
    y, z, w = sympy.symbols("y z w")
    Rw = PolyRing(QQ, ("y", "z", "w"))
    f_s = z ** len(fc) + sum(c * y ** (i + 1) * z ** (len(fc) - 1 - i) for i, c in enumerate(fc))
    g_s = sum(c * y ** i * z ** (i + 1) for i, c in enumerate(gc))
    ours = resultant_in_var(Rw.parse(str(f_s)), Rw.parse(str(w - g_s).replace("**", "^")), "z")
    theirs = sympy.expand(sympy.resultant(f_s, w - g_s, z))
    assert ours == Rw.parse(str(theirs).replace("**", "^"))
    # monic of degree deg_z f in w
    parts = ours.coefficients_in("w")
    assert max(parts) == len(fc) and parts[len(fc)] == Rw.one()
