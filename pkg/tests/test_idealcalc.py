import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from samuel.idealcalc import eliminate, groebner, ideal_quotient, normal_form, poly_gcd
from samuel.polyring import GREVLEX, LEX, FieldSpec, PolyRing, QQ, resultant_in_var

R = PolyRing(QQ, ("x", "y", "z", "w"))


def P(text, ring=R):
    return ring.parse(text)


def test_groebner_examples():
    G = groebner([P("x^2 - y^3")])
    assert len(G.gens) == 1 and G.gens[0] == P("y^3 - x^2")
    assert groebner([P("x*y - 1"), P("x^2")]).is_unit_ideal()
    assert groebner([], ring=R).is_zero_ideal()


def test_normal_form_examples():
    G = groebner([P("x^2 - y^3")], LEX)
    assert normal_form(P("x^2"), G) == P("y^3")
    # under grevlex the leading term is y^3, so x^2 is already reduced
    assert normal_form(P("x^2"), groebner([P("x^2 - y^3")])) == P("x^2")
    assert normal_form(P("x^2*z - y^3*z"), G).is_zero()
    assert normal_form(R.one(), groebner([P("x")])) == R.one()


def test_quotient_examples():
    assert ideal_quotient(groebner([P("x^2")]), P("x")).gens == (P("x"),)
    I = groebner([P("x*y"), P("z^2")])
    assert ideal_quotient(I, R.one()).gens == I.gens
    assert ideal_quotient(groebner([P("x*y")]), P("x")).gens == (P("y"),)
    with pytest.raises(ValueError):
        ideal_quotient(I, R.zero())


def test_eliminate_examples():
    E = eliminate(groebner([P("w - z"), P("z^2 - y^3")]), ["w", "y"])
    assert E.gens == (P("w^2 - y^3"),) or E.gens == (P("y^3 - w^2"),)
    E = eliminate(groebner([P("x*y - z^3"), P("w - x*z")]), ["x", "y", "w"])
    assert len(E.gens) == 1 and E.gens[0] in (P("w^3 - x^4*y"), P("x^4*y - w^3"))
    I = groebner([P("x*y - z^3")])
    assert eliminate(I, list(R.variables)).gens == I.gens


def test_gcd():
    assert poly_gcd(P("x^2*y - x*y^2"), P("x*y")) == P("x*y")
    assert poly_gcd(P("x + 1"), P("y")).is_constant()


def test_deterministic_output():
    gens = [P("x*y - z^2"), P("y*w - z*x"), P("x^3 - w")]
    assert str(groebner(gens)) == str(groebner(list(reversed(gens))))


def _to_sympy(f):
    syms = sympy.symbols(f.ring.variables)
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, e)])
               for e, c in f.terms.items())


IDEALS = [
    ["x*y - z^2", "y*w - z*x", "x^2 - y*z"],
    ["x^2 + y*z - 1", "x*y - w", "z^2 - x"],
    ["x^3 - y*z", "y^2 - z*w"],
]


@pytest.mark.parametrize("gens", IDEALS)
@pytest.mark.parametrize("order,name", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_groebner_matches_sympy(gens, order, name):
    ours = groebner([P(g) for g in gens], order)
    syms = sympy.symbols("x y z w")
    theirs = sympy.groebner([sympy.sympify(g.replace("^", "**")) for g in gens], *syms, order=name)
    assert sorted(str(sympy.expand(_to_sympy(g))) for g in ours.gens) == \
        sorted(str(sympy.expand(g / sympy.Poly(g, *syms).LC(order=name))) for g in theirs.exprs)


def _combination(rng, gens):
    out = R.zero()
    for g in gens:
        c = R.zero()
        for _ in range(rng.randint(0, 2)):
            e = [0] * 4
            for _ in range(rng.randint(0, 2)):
                e[rng.randrange(4)] += 1
            c = c + R.monomial(tuple(e), rng.randint(-3, 3))
        out = out + c * g
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(IDEALS))
def test_membership_of_combinations(seed, gens):
    rng = random.Random(seed)
    gens = [P(g) for g in gens]
    G = groebner(gens)
    f = _combination(rng, gens)
    assert normal_form(f, G).is_zero()
    assert not normal_form(f + R.one(), G).is_zero()


@pytest.mark.parametrize("gens,g", [
    (["x^2*y", "x*z^2"], "x"),
    (["x*y - z^2", "y*w"], "y"),
    (["x^2 - y^3", "z*x"], "x*z + y"),
])
def test_quotient_property(gens, g):
    I = groebner([P(t) for t in gens])
    gg = P(g)
    Q = ideal_quotient(I, gg)
    for h in Q.gens:
        assert normal_form(h * gg, I).is_zero()
    for h in I.gens:
        assert Q.contains(h)


def test_quotient_when_element_in_ideal():
    I = groebner([P("x*y"), P("z^3")])
    Q = ideal_quotient(I, P("x*y*z"))
    assert Q.is_unit_ideal()


@pytest.mark.parametrize("f,g", [("z^2 - y^3", "z*y"), ("z^3 - x*y", "x*z + y"), ("z^2 + x*z - y^3", "z^2")])
def test_eliminate_agrees_with_resultant(f, g):
    ff, gg = P(f), P(g)
    E = eliminate(groebner([ff, P("w") - gg]), ["x", "y", "w"])
    res = resultant_in_var(ff, P("w") - gg, "z")
    assert len(E.gens) == 1
    lc = res.leading_coefficient(E.order)
    assert E.gens[0] == res.scale(R.field.inv(lc))


def test_prime_field_groebner():
    F3 = PolyRing(FieldSpec(3), ("x", "y"))
    G = groebner([F3.parse("x^3 - y"), F3.parse("x*y - 1")])
    assert all(c in range(3) for g in G.gens for c in g.terms.values())
    assert G.contains(F3.parse("x^4 - 1")) is True
