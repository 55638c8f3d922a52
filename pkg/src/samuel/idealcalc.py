"""Buchberger's algorithm, normal forms, colon ideals and elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import RingMismatchError
from .polyring import GREVLEX, MonomialOrder, Polynomial, PolyRing, block_order


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mlcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def normalize(f: Polynomial, order: MonomialOrder) -> Polynomial:
    """Primitive integer form with positive leading coefficient over Q; monic over F_p."""
    if f.is_zero():
        return f
    if f.ring.field.characteristic:
        return f.monic(order)
    coeffs = list(f.terms.values())
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    num = 0
    for c in coeffs:
        num = gcd(num, int(c * den))
    scale = Fraction(den, num) if num else Fraction(1)
    if f.leading_coefficient(order) < 0:
        scale = -scale
    return f.scale(scale)


def reduce_full(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Complete reduction of f by ``basis`` (remainder of the division algorithm)."""
    if f.is_zero() or not basis:
        return f
    ring = f.ring
    F = ring.field
    p = F.characteristic
    key = order.key
    lead = []
    for g in basis:
        lm = g.leading_monomial(order)
        lead.append((lm, F.inv(g.terms[lm]), g))
    work = dict(f.terms)
    rem = {}
    while work:
        e = max(work, key=key)
        c = work[e]
        for lm, inv, g in lead:
            if _divides(lm, e):
                shift = tuple(a - b for a, b in zip(e, lm))
                factor = c * inv
                if p:
                    factor %= p
                for ge, gc in g.terms.items():
                    te = tuple(a + b for a, b in zip(ge, shift))
                    v = work.get(te, 0) - factor * gc
                    if p:
                        v %= p
                    if v:
                        work[te] = v
                    else:
                        work.pop(te, None)
                break
        else:
            rem[e] = c
            del work[e]
    return Polynomial._make(ring, rem)


@dataclass(frozen=True)
class GroebnerBasis:
    gens: tuple
    order: MonomialOrder
    ring: PolyRing
    reduced: bool = True

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.gens)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __str__(self):
        return "{" + ", ".join(g.to_string(self.order) for g in self.gens) + "}"


def _spoly(f, g, order):
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    m = _mlcm(lf, lg)
    cf, cg = f.terms[lf], g.terms[lg]
    a = f.mul_term(tuple(x - y for x, y in zip(m, lf)), cg)
    b = g.mul_term(tuple(x - y for x, y in zip(m, lg)), cf)
    return a - b


def groebner(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX, ring: PolyRing | None = None):
    """Reduced Groebner basis by Buchberger with the normal selection strategy.

    Pairs are pruned with the Gebauer-Moeller installation of both Buchberger criteria.
    """
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    key = order.key
    polys: list = []
    lms: list = []
    active: list = []
    pairs: set = set()

    def update(h):
        t = h.leading_monomial(order)
        polys.append(h)
        lms.append(t)
        hi = len(polys) - 1
        cands = [(hi, g) for g in active]
        lcms = {g: _mlcm(t, lms[g]) for g in active}
        keep = []
        for idx, (_, g1) in enumerate(cands):
            l1 = lcms[g1]
            if _coprime(t, lms[g1]):
                keep.append(g1)
                continue
            redundant = False
            for _, g2 in cands[idx + 1:]:
                if _divides(lcms[g2], l1):
                    redundant = True
                    break
            if not redundant:
                for g2 in keep:
                    if _divides(lcms[g2], l1):
                        redundant = True
                        break
            if not redundant:
                keep.append(g1)
        new_pairs = {(g, hi) for g in keep if not _coprime(t, lms[g])}
        survivors = set()
        for (a, b) in pairs:
            lab = _mlcm(lms[a], lms[b])
            if (not _divides(t, lab)) or _mlcm(lms[a], t) == lab or _mlcm(lms[b], t) == lab:
                survivors.add((a, b))
        pairs.clear()
        pairs.update(survivors | new_pairs)
        active[:] = [g for g in active if not _divides(t, lms[g])] + [hi]

    for g in sorted((normalize(g, order) for g in gens if not g.is_zero()),
                    key=lambda g: key(g.leading_monomial(order))):
        r = reduce_full(g, [polys[i] for i in active], order)
        if not r.is_zero():
            update(normalize(r, order))
    while pairs:
        pair = min(pairs, key=lambda ab: (key(_mlcm(lms[ab[0]], lms[ab[1]])), ab))
        pairs.discard(pair)
        s = _spoly(polys[pair[0]], polys[pair[1]], order)
        r = reduce_full(s, [polys[i] for i in active], order)
        if not r.is_zero():
            update(normalize(r, order))
    basis = [polys[i] for i in active]
    basis = _minimalize(basis, order)
    reduced = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        reduced.append(reduce_full(g, others, order).monic(order))
    reduced.sort(key=lambda g: key(g.leading_monomial(order)))
    return GroebnerBasis(tuple(reduced), order, ring, True)


def _minimalize(basis, order):
    key = order.key
    out = []
    for g in sorted(basis, key=lambda h: key(h.leading_monomial(order))):
        lm = g.leading_monomial(order)
        if not any(_divides(h.leading_monomial(order), lm) for h in out):
            out.append(g)
    return out


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise RingMismatchError(f"{f.ring} vs {G.ring}")
    return reduce_full(f, G.gens, G.order)


def _tagged_ring(ring: PolyRing):
    tag = ring.fresh_name("_t")
    return ring.extend([tag]), tag


def intersect_with_principal(I: GroebnerBasis, g: Polynomial) -> list:
    """Generators of I ∩ <g>, via t*I + (1-t)*g eliminating t."""
    big, tag = _tagged_ring(I.ring)
    t = big.var(tag)
    gens = [t * f.embed(big) for f in I.gens] + [(big.one() - t) * g.embed(big)]
    G = groebner(gens, block_order([big.nvars - 1]), big)
    out = []
    for h in G.gens:
        if all(e[-1] == 0 for e in h.terms):
            out.append(Polynomial._make(I.ring, {e[:-1]: c for e, c in h.terms.items()}))
    return out


def ideal_quotient(I: GroebnerBasis, g: Polynomial) -> GroebnerBasis:
    """(I : g) = {h : h*g in I}."""
    if g.ring != I.ring:
        raise RingMismatchError(f"{g.ring} vs {I.ring}")
    if g.is_zero():
        raise ValueError("colon by the zero polynomial")
    if I.is_zero_ideal():
        return I
    quot = [h.exact_div(g) for h in intersect_with_principal(I, g)]
    return groebner(quot, I.order, I.ring)


def eliminate(I: GroebnerBasis, keep: Iterable[str]) -> GroebnerBasis:
    """I ∩ k[keep], read off a block-order basis eliminating the other variables."""
    ring = I.ring
    keep = set(keep)
    for v in keep:
        ring.index(v)
    front = [i for i, v in enumerate(ring.variables) if v not in keep]
    order = block_order(front)
    G = groebner(I.gens, order, ring)
    kept = tuple(h for h in G.gens if all(all(e[i] == 0 for i in front) for e in h.terms))
    return GroebnerBasis(kept, order, ring, True)


def ideal(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, ring: PolyRing | None = None):
    return groebner(gens, order, ring)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """gcd via the generator of <a> ∩ <b> (the lcm): gcd = a*b/lcm."""
    if a.is_zero():
        return normalize(b, GREVLEX)
    if b.is_zero():
        return normalize(a, GREVLEX)
    if a.is_constant() or b.is_constant():
        return a.ring.one()
    I = groebner([a], GREVLEX)
    inter = intersect_with_principal(I, b)
    assert len(inter) == 1, "intersection of principal ideals is principal"
    return normalize((a * b).exact_div(inter[0]), GREVLEX)


def power_of_ideal_monomials(ring: PolyRing, qvars: Sequence[str], a: int) -> list:
    """Monomial generators of <qvars>^a."""
    idx = [ring.index(v) for v in qvars]
    out = []

    def rec(pos, left, e):
        if pos == len(idx) - 1:
            e[idx[pos]] = left
            out.append(Polynomial._make(ring, {tuple(e): ring.field(1)}))
            e[idx[pos]] = 0
            return
        for k in range(left, -1, -1):
            e[idx[pos]] = k
            rec(pos + 1, left - k, e)
        e[idx[pos]] = 0

    if a == 0:
        return [ring.one()]
    rec(0, a, [0] * ring.nvars)
    return out
