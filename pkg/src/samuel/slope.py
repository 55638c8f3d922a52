"""Weighted initial forms, the m-th power test and the Samuel slope.

The slope of a non-regular ring is read off a transversal frame: for each
fiber generator theta, translate theta by elements of the base ring S while
the weighted initial form of its characteristic polynomial is an m-th power
(w - alpha)^m.  Each translation strictly raises the weight; the loop stops at
a non-integral weight or when no m-th root exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .errors import CapExceededError, InternalError, PresentationError
from .localring import Center, LocalRingPresentation, embedding_data, recenter
from .polyring import INF, OrderValue, Polynomial, substitute
from .samuelfn import is_regular_at
from .transversal import (
    TransversalFrame,
    charpoly_str,
    coefficient_orders,
    find_transversal_frame,
    transversal_at_prime,
    w_coefficients,
)

DEFAULT_ITERATION_CAP = 64


@dataclass(frozen=True)
class WeightedForm:
    q: OrderValue
    degree: int
    components: tuple
    qvars: tuple
    wvar: str

    def to_polynomial(self) -> Polynomial:
        """w^m + sum A_j w^(m-j) as an element of the w-ring."""
        ring = self.components[0].ring
        w = ring.var(self.wvar)
        out = w ** self.degree
        for j, A in enumerate(self.components, start=1):
            out = out + A * w ** (self.degree - j)
        return out

    def __str__(self):
        return charpoly_str(self.to_polynomial(), self.wvar)


def weighted_initial_form(chi: Polynomial, wvar: str, qvars: Sequence[str]) -> WeightedForm:
    """Leading graded part of chi when w carries the weight q = min nu_q(a_j)/j."""
    qvars = tuple(qvars)
    coeffs = w_coefficients(chi, wvar)
    orders = coefficient_orders(chi, wvar, qvars)
    if all(o.is_infinite for o in orders):
        raise PresentationError(f"{chi} is a pure power of {wvar}: the element is nilpotent (non-reduced input)")
    q = min(o / j for j, o in enumerate(orders, start=1))
    zero = chi.ring.zero()
    comps = []
    for j, (a, o) in enumerate(zip(coeffs, orders), start=1):
        target = q * j
        if not o.is_infinite and o == target:
            comps.append(a.homogeneous_part(qvars, int(target.value)))
        else:
            comps.append(zero)
    return WeightedForm(q, len(coeffs), tuple(comps), qvars, wvar)


def _kth_root(f: Polynomial, k: int) -> Polynomial | None:
    if k == 1:
        return f
    F = f.ring.field
    out = {}
    for e, c in f.terms.items():
        if any(x % k for x in e):
            return None
        out[tuple(x // k for x in e)] = F.root(c, k)
    return Polynomial(f.ring, out)


def mth_power_root(W: WeightedForm) -> Polynomial | None:
    """alpha with w^m + sum A_j w^(m-j) = (w - alpha)^m, or None."""
    if not W.q.is_integer:
        return None
    m = W.degree
    F = W.components[0].ring.field
    p = F.characteristic
    k = 1
    if p:
        while m % (k * p) == 0:
            k *= p
    if k == 1:
        alpha = W.components[0].scale(F.div(F(-1), F(m)))
    else:
        # A_k = C(m,k) (-alpha)^k with C(m,k) = m/k nonzero mod p.
        beta = W.components[k - 1].scale(F.inv(F(comb(m, k))))
        root = _kth_root(beta, k)
        if root is None:
            return None
        alpha = -root
    for j, A in enumerate(W.components, start=1):
        if A != ((-alpha) ** j).scale(F(comb(m, j))):
            return None
    return alpha


def translation_step(chi: Polynomial, wvar: str, s: Polynomial, qvars: Sequence[str]) -> Polynomial:
    """chi(w + s): the characteristic polynomial of theta - s; the weight must strictly grow."""
    before = weighted_initial_form(chi, wvar, qvars).q
    ring = chi.ring
    new = substitute(chi, {wvar: ring.var(wvar) + s}, ring)
    after = min(o / j for j, o in enumerate(coefficient_orders(new, wvar, qvars), start=1))
    if not after > before:
        raise InternalError(f"translation by {s} did not raise the weight ({before} -> {after})")
    return new


@dataclass(frozen=True)
class SlopeStep:
    q: OrderValue
    form: str
    root: str | None
    translation: str
    alpha: Polynomial | None = field(default=None, compare=False)

    def render(self) -> str:
        return f"q={self.q} form={self.form} root={self.root or 'NONE'} translation={self.translation}"


@dataclass(frozen=True)
class GeneratorSlope:
    generator: str
    value: OrderValue
    steps: tuple
    translation: Polynomial
    witness: Polynomial


def primitive_slope(frame: TransversalFrame, theta: str | Polynomial, c: Center | None = None,
                    cap: int = DEFAULT_ITERATION_CAP) -> GeneratorSlope:
    """sup over s in S of the asymptotic order of theta - s, with the translation trace."""
    c = c or Center.origin(frame.original.ring)
    rep = transversal_at_prime(frame, c.pvars)
    if not rep.ok:
        raise PresentationError(f"frame is not transversal at {c}: {rep.reason}")
    ring, wring, wvar = frame.ring, frame.wring, frame.wvar
    if isinstance(theta, str):
        name, g = theta, ring.var(theta)
        chi = frame.charpolys[theta] if theta in frame.charpolys else frame.charpoly(g, in_frame=True)
    else:
        name, g = str(theta), theta
        chi = frame.charpoly(g, in_frame=True)
    total = wring.zero()
    steps = []
    for _ in range(cap):
        W = weighted_initial_form(chi, wvar, rep.qvars)
        alpha = mth_power_root(W)
        steps.append(SlopeStep(W.q, str(W), None if alpha is None else str(alpha), str(total),
                               None if alpha is None else _from_wring(alpha, ring)))
        if alpha is None:
            shift = _from_wring(total, ring)
            return GeneratorSlope(name, W.q, tuple(steps), shift, frame.from_frame(g - shift))
        chi = translation_step(chi, wvar, alpha, rep.qvars)
        total = total + alpha
    raise CapExceededError(f"slope loop for {name} did not stop after {cap} translations (non-reduced input?)")


def _from_wring(f: Polynomial, ring) -> Polynomial:
    return Polynomial(ring, {e[:-1]: c for e, c in f.terms.items()})


@dataclass(frozen=True)
class SlopeReport:
    slope: OrderValue
    extremal: bool
    excess: int
    embedding_dim: int
    multiplicity: int
    center: str
    per_generator: tuple = ()
    frame: TransversalFrame | None = field(default=None, compare=False)
    diagnostics: tuple = ()

    @property
    def witness_translations(self) -> list:
        return [str(gs.translation) for gs in self.per_generator]

    @property
    def witnesses(self) -> list:
        return [str(gs.witness) for gs in self.per_generator]

    def trace_lines(self) -> list:
        out = []
        for gs in self.per_generator:
            for st in gs.steps:
                out.append(f"{gs.generator}: {st.render()}")
        return out


def samuel_slope(P: LocalRingPresentation, c: Center | None = None, frame: TransversalFrame | None = None,
                 cap: int = DEFAULT_ITERATION_CAP) -> SlopeReport:
    c = c or Center.origin(P.ring)
    embdim, t = embedding_data(P, c)
    if is_regular_at(P, c):
        return SlopeReport(INF, False, t, embdim, 1, str(c))
    if frame is None:
        if not P.is_hypersurface:
            raise PresentationError("a multi-generator presentation needs an explicit frame (base/fiber)")
        frame = find_transversal_frame(P, c)
    rep = transversal_at_prime(frame, c.pvars)
    if not rep.ok:
        raise PresentationError(
            f"frame is not transversal at {c} ({rep.reason}); choose a frame adapted to this prime")
    per = tuple(primitive_slope(frame, theta, c, cap) for theta in frame.fiber_vars)
    low = min(gs.value for gs in per)
    diags = ("frame only partially validated: reducedness and dimension are user-asserted",) if frame.partial else ()
    if low > 1:
        return SlopeReport(low, True, t, embdim, frame.generic_rank, str(c), per, frame, diags)
    return SlopeReport(OrderValue(1), False, t, embdim, frame.generic_rank, str(c), per, frame, diags)


@dataclass(frozen=True)
class ProbeEntry:
    point: dict
    slope: OrderValue | None
    holds: bool
    skipped: bool = False
    note: str = ""


@dataclass(frozen=True)
class ProbeReport:
    pvars: tuple
    prime_slope: OrderValue
    entries: tuple

    @property
    def violations(self) -> list:
        return [e for e in self.entries if not e.skipped and not e.holds]


def semicontinuity_probe(P: LocalRingPresentation, pvars: Sequence[str],
                         samples: Sequence[Mapping[str, object]]) -> ProbeReport:
    """Compare the slope at <pvars> with the slope at maximal ideals on V(p).

    Each sample assigns values to variables outside the prime (others default
    to 0); the prime variables sit at 0.  Violations are listed, not raised.
    """
    cp = Center.prime(P.ring, pvars)
    prime_slope = samuel_slope(P, cp).slope
    entries = []
    for sample in samples:
        bad = [v for v in sample if v in cp.pvars]
        if bad:
            raise PresentationError(f"sample fixes prime variables {bad}; they are 0 on V(p)")
        point = {v: P.ring.field(sample.get(v, 0)) for v in P.ring.variables if v not in cp.pvars}
        shown = {v: str(x) for v, x in point.items()}
        if cp.is_origin:
            entries.append(ProbeEntry(shown, prime_slope, True, True, "the prime is the maximal ideal itself"))
            continue
        Q = recenter(P, point)
        s = samuel_slope(Q).slope
        entries.append(ProbeEntry(shown, s, prime_slope <= s))
    return ProbeReport(cp.pvars, prime_slope, tuple(entries))
