import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from samuel.errors import NotTransversalError
from samuel.localring import Center, multiplicity, parse_ring_file
from samuel.samuelfn import hickel_order, samuel_order, samuel_order_nonlocalized_at_prime
from samuel.transversal import find_transversal_frame

from helpers import (
    ELEMENTS,
    RINGS,
    center,
    differential_failures,
    divides_factorial,
    order_axiom_failures,
    random_pairs,
    random_poly,
    ring,
)


def test_hickel_examples():
    C2 = ring("char2")
    fr = find_transversal_frame(C2)
    assert hickel_order(fr, C2.element("x")).value == 2
    X = ring("xy-z3")
    fr = find_transversal_frame(X)
    cert = hickel_order(fr, X.element("x*y"))
    assert cert.value == 3 and cert.route == "hickel" and cert.certified
    W = parse_ring_file("field F 2\nvars x y1 y2\nideal x^2 - y1^2*y2\n")
    fr = find_transversal_frame(W)
    assert hickel_order(fr, W.element("x"), Center.prime(W.ring, ["x", "y1"])).value == 1


def test_hickel_rejects_intransversal_prime():
    Y = ring("y2+zx3")
    fr = find_transversal_frame(Y)
    with pytest.raises(NotTransversalError):
        hickel_order(fr, Y.element("z"), Center.prime(Y.ring, ["y", "z"]))


def test_samuel_order_examples():
    X = ring("xy-z3")
    assert samuel_order(X, X.element("y*z")).value == 2
    cert = samuel_order(X, X.element("3 + x"))
    assert cert.value == 0 and cert.certified
    Y = ring("y2+zx3")
    cert = samuel_order(Y, Y.element("z"), Center.prime(Y.ring, ["y", "z"]))
    assert cert.value == 2 and cert.route == "regular-local" and cert.certified


def test_zero_element_is_infinite():
    X = ring("xy-z3")
    cert = samuel_order(X, X.element("x*y - z^3"))
    assert cert.value.is_infinite and cert.certified


def test_strategies():
    C = ring("cusp")
    x = C.element("x")
    assert samuel_order(C, x, strategy="hickel").route == "hickel"
    cert = samuel_order(C, x, strategy="oracle", n_max=1)
    assert cert.value == 1 and not cert.certified
    with pytest.raises(ValueError):
        samuel_order(C, x, strategy="magic")


def test_auto_falls_back_to_oracle():
    B = parse_ring_file("field F 2\nvars x y\nideal x^2*y + x*y^2\n")
    cert = samuel_order(B, B.element("x"), n_max=3)
    assert cert.route == "oracle" and not cert.certified
    assert any("no frame" in d for d in cert.diagnostics)


def test_nonlocalized_examples():
    Y = ring("y2+zx3")
    cert = samuel_order_nonlocalized_at_prime(Y, Y.element("z"), ["y", "z"])
    assert cert.value == 1 and cert.certified
    W = ring("whitney2")
    g = W.element("x")
    cert = samuel_order_nonlocalized_at_prime(W, g, ["x", "y1"])
    assert cert.value == 1 and cert.certified
    assert cert.value == samuel_order(W, g, Center.prime(W.ring, ["x", "y1"])).value
    assert samuel_order_nonlocalized_at_prime(W, W.element("y1"), ["x", "y1"], n_max=1).value >= 1


@pytest.mark.parametrize("name,elem,pvars,expected", ELEMENTS)
def test_corpus_values(name, elem, pvars, expected):
    P = ring(name)
    cert = samuel_order(P, P.element(elem), center(P, pvars))
    assert cert.certified and cert.value == Fraction(expected)


@pytest.mark.parametrize("name,elem,pvars,expected", ELEMENTS)
def test_differential_oracle_vs_hickel(name, elem, pvars, expected):
    P = ring(name)
    c = center(P, pvars)
    fr = find_transversal_frame(P, c)
    assert differential_failures(P, P.element(elem), c, fr) == []


def test_semicontinuity_with_equal_multiplicities():
    for p in (2, 3):
        W = parse_ring_file(RINGS[f"whitney{p}"])
        cp = Center.prime(W.ring, ["x", "y1"])
        assert multiplicity(W, cp) == multiplicity(W)
        g = W.element("x")
        assert samuel_order(W, g, cp).value <= samuel_order(W, g).value
        assert samuel_order(W, g).value == Fraction(p + 1, p)


def test_semicontinuity_fails_without_hypothesis():
    Y = ring("y2+zx3")
    cp = Center.prime(Y.ring, ["y", "z"])
    assert multiplicity(Y, cp) == 1 != multiplicity(Y) == 2
    z = Y.element("z")
    assert samuel_order(Y, z, cp).value == 2 > samuel_order(Y, z).value == 1


# -- properties -----------------------------------------------------------

NAMES = ["cusp", "xy-z3", "y2+zx3", "char2", "whitney2", "whitney3"]


@pytest.mark.parametrize("name", NAMES)
def test_order_axioms(name):
    P = ring(name)
    fr = find_transversal_frame(P)
    assert order_axiom_failures(P, random_pairs(P, 200, sum(map(ord, name))), fr) == []


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_homogeneity(name, seed, m):
    P = ring(name)
    fr = find_transversal_frame(P)
    g = random_poly(random.Random(seed), P.ring, 2, 3)
    assert hickel_order(fr, g ** m).value == hickel_order(fr, g).value * m


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 10 ** 6))
def test_additivity_for_base_elements(name, seed):
    P = ring(name)
    fr = find_transversal_frame(P)
    rng = random.Random(seed)
    a_frame = random_poly(rng, P.ring, 3, 3, variables=fr.base_vars)
    a = fr.from_frame(a_frame)
    g = random_poly(rng, P.ring, 2, 3)
    va = hickel_order(fr, a).value
    assert va == a_frame.order_at(fr.base_vars)
    assert hickel_order(fr, a * g).value == va + hickel_order(fr, g).value


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 10 ** 6))
def test_denominators_divide_rank_factorial(name, seed):
    P = ring(name)
    fr = find_transversal_frame(P)
    g = random_poly(random.Random(seed), P.ring, 3, 4)
    cert = hickel_order(fr, g)
    assert cert.certified and divides_factorial(cert.value, fr.generic_rank)
