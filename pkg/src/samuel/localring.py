"""Presented local rings k[x]/I at the origin or at a monomial prime.

The naive order of g at a center P = <pvars> is the largest a with
g in P^a B_P.  Membership in (I + P^a) B_P is decided with colon ideals:
g lies there exactly when (I + P^a : g) is not contained in P.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import CapExceededError, ParseError, PresentationError
from .idealcalc import GroebnerBasis, groebner, ideal_quotient, normal_form, poly_gcd, power_of_ideal_monomials
from .polyring import INF, FieldSpec, OrderValue, Polynomial, PolyRing

DEFAULT_ORDER_CAP = 64
DEFAULT_NMAX = 8


@dataclass(frozen=True)
class Center:
    """The maximal ideal at the origin or a monomial prime <pvars>."""

    pvars: tuple
    kind: str

    @classmethod
    def origin(cls, ring: PolyRing) -> "Center":
        return cls(tuple(ring.variables), "maximal-origin")

    @classmethod
    def prime(cls, ring: PolyRing, pvars: Iterable[str]) -> "Center":
        pvars = tuple(v for v in ring.variables if v in set(pvars))
        if not pvars:
            raise ValueError("a center needs at least one variable")
        for v in set(pvars) - set(ring.variables):
            ring.index(v)
        if len(pvars) == ring.nvars:
            return cls.origin(ring)
        return cls(pvars, "monomial-prime")

    @property
    def is_origin(self) -> bool:
        return self.kind == "maximal-origin"

    def __str__(self):
        return "<" + ",".join(self.pvars) + ">"


def _in_monomial_prime(h: Polynomial, pvars: Sequence[str]) -> bool:
    idx = [h.ring.index(v) for v in pvars]
    return all(any(e[i] for i in idx) for e in h.terms)


@dataclass(frozen=True)
class LocalRingPresentation:
    ring: PolyRing
    gens: tuple
    dim: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        gens = tuple(g for g in self.gens if not g.is_zero())
        object.__setattr__(self, "gens", gens)
        for g in gens:
            if g.ring != self.ring:
                raise PresentationError("generator lives in another ring")
            if g.constant_term() != 0:
                raise PresentationError(f"generator {g} does not vanish at the origin")
        if self.dim is not None:
            if self.is_hypersurface and self.dim != self.ring.nvars - 1:
                raise PresentationError("a hypersurface has dimension #variables - 1")
            if not gens and self.dim != self.ring.nvars:
                raise PresentationError("k[x] has dimension #variables")

    @classmethod
    def from_strings(cls, field_spec: FieldSpec, variables: Sequence[str], gens: Sequence[str],
                     dim: int | None = None, check_reduced: bool = True):
        ring = PolyRing(field_spec, tuple(variables))
        P = cls(ring, tuple(ring.parse(g) for g in gens), dim)
        if check_reduced:
            P.check_reduced()
        return P

    @property
    def is_hypersurface(self) -> bool:
        return len(self.gens) == 1

    @property
    def equation(self) -> Polynomial:
        if not self.is_hypersurface:
            raise PresentationError("not a hypersurface")
        return self.gens[0]

    @property
    def dimension(self) -> int:
        if self.is_hypersurface:
            return self.ring.nvars - 1
        if not self.gens:
            return self.ring.nvars
        if self.dim is None:
            raise PresentationError("dimension must be supplied for multi-generator ideals")
        return self.dim

    def ideal(self) -> GroebnerBasis:
        if "I" not in self._cache:
            self._cache["I"] = groebner(self.gens, ring=self.ring)
        return self._cache["I"]

    def ideal_plus_power(self, pvars: Sequence[str], a: int) -> GroebnerBasis:
        key = ("I+P^a", tuple(pvars), a)
        if key not in self._cache:
            gens = list(self.gens) + power_of_ideal_monomials(self.ring, pvars, a)
            self._cache[key] = groebner(gens, ring=self.ring)
        return self._cache[key]

    def check_reduced(self) -> None:
        """Hypersurfaces must be squarefree: gcd(F, dF/dx_1, ..., dF/dx_n) constant."""
        if not self.is_hypersurface:
            return
        F = self.equation
        partials = [F.diff(v) for v in self.ring.variables]
        if all(d.is_zero() for d in partials):
            raise PresentationError(f"{F} has all partial derivatives zero: a p-th power, not reduced")
        g = F
        for d in partials:
            if g.is_constant():
                break
            if not d.is_zero():
                g = poly_gcd(g, d)
        if not g.is_constant():
            raise PresentationError(f"{F} is not squarefree (repeated factor {g}): not reduced")

    def element(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    def __str__(self):
        gens = ", ".join(str(g) for g in self.gens) or "0"
        return f"{self.ring}/({gens})"


def _rank_over_fractions(rows: list) -> int:
    """Rank of a polynomial matrix over the fraction field of its entries' ring."""
    M = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    col = 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if not M[i][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, len(M)):
            a = M[i][col]
            if not a.is_zero():
                M[i] = [x * p - a * y for x, y in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def embedding_data(P: LocalRingPresentation, center: Center | None = None):
    """(embedding dimension, excess of embedding dimension) of B at the center."""
    center = center or Center.origin(P.ring)
    ring = P.ring
    pidx = [ring.index(v) for v in center.pvars]
    rows = []
    for g in P.gens:
        row = []
        for j in pidx:
            coeff = {}
            for e, c in g.terms.items():
                if e[j] == 1 and sum(e[i] for i in pidx) == 1:
                    coeff[e[:j] + (0,) + e[j + 1:]] = c
            row.append(Polynomial._make(ring, coeff))
        rows.append(row)
    embdim = len(pidx) - _rank_over_fractions(rows)
    local_dim = P.dimension - (ring.nvars - len(pidx))
    excess = embdim - local_dim
    if excess < 0:
        raise PresentationError(f"negative excess {excess}: supplied dimension is inconsistent")
    return embdim, excess


def _check_center(P: LocalRingPresentation, c: Center) -> None:
    for g in P.gens:
        if not _in_monomial_prime(g, c.pvars):
            raise PresentationError(f"center {c} does not contain the ideal (generator {g})")


def is_zero_at_center(P: LocalRingPresentation, g: Polynomial, c: Center) -> bool:
    """True when g maps to 0 in B_c: some h outside the center kills g modulo I."""
    if g.is_zero():
        return True
    if not P.gens:
        return False
    Q = ideal_quotient(P.ideal(), g)
    return any(not _in_monomial_prime(h, c.pvars) for h in Q.gens)


def _member(P: LocalRingPresentation, g: Polynomial, c: Center, a: int, localized: bool) -> bool:
    J = P.ideal_plus_power(c.pvars, a)
    if c.is_origin or not localized:
        # I + m^a is m-primary, so membership in the localization is plain membership.
        return J.contains(g)
    Q = ideal_quotient(J, g)
    return any(not _in_monomial_prime(h, c.pvars) for h in Q.gens)


def local_order(P: LocalRingPresentation, g: Polynomial, c: Center | None = None,
                cap: int = DEFAULT_ORDER_CAP, *, localized: bool = True,
                lower_bound: int = 0) -> OrderValue:
    """Largest a with g in P^a B_P (or in P^a + I when ``localized`` is false)."""
    c = c or Center.origin(P.ring)
    _check_center(P, c)
    if localized:
        if is_zero_at_center(P, g, c):
            return INF
    elif g.is_zero() or (P.gens and P.ideal().contains(g)):
        return INF
    if not _in_monomial_prime(g, c.pvars):
        return OrderValue(0)
    rep = normal_form(g, P.ideal()) if P.gens else g
    start = max(lower_bound, _int(g.order_at(c.pvars)), _int(rep.order_at(c.pvars)))
    a = start
    target = rep
    while True:
        if a + 1 > cap:
            raise CapExceededError(f"order of {g} exceeds the cap {cap}")
        if not _member(P, target, c, a + 1, localized):
            return OrderValue(a)
        a += 1


def _int(v: OrderValue) -> int:
    return 0 if v.is_infinite else int(v.value)


@dataclass(frozen=True)
class OracleResult:
    values: tuple
    best: OrderValue
    best_n: int
    certified: bool = False


def samuel_limit_oracle(P: LocalRingPresentation, g: Polynomial, c: Center | None = None,
                        n_max: int = DEFAULT_NMAX, cap: int = DEFAULT_ORDER_CAP,
                        *, localized: bool = True) -> OracleResult:
    """The sequence nu(g^n)/n, n = 1..n_max; each entry is a lower bound for the limit."""
    c = c or Center.origin(P.ring)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    first = local_order(P, g, c, cap, localized=localized)
    if first.is_infinite:
        return OracleResult((INF,), INF, 1, True)
    values = [first]
    orders = [int(first.value)]
    power = g
    base = normal_form(g, P.ideal()) if P.gens else g
    for n in range(2, n_max + 1):
        power = power * base
        if P.gens:
            power = normal_form(power, P.ideal())
        lb = orders[-1] + orders[0]
        v = local_order(P, power, c, cap, localized=localized, lower_bound=lb)
        if v.is_infinite:
            raise PresentationError(f"{g} is nilpotent at {c}: the presentation is not reduced")
        orders.append(int(v.value))
        values.append(OrderValue(v.value / n))
    best_n = max(range(len(values)), key=lambda i: (values[i], -i)) + 1
    unit = first == 0
    return OracleResult(tuple(values), values[best_n - 1], best_n, unit)


def multiplicity(P: LocalRingPresentation, c: Center | None = None, frame=None) -> int:
    """Multiplicity of B at the center: order of the equation, or a frame's generic rank."""
    c = c or Center.origin(P.ring)
    _check_center(P, c)
    if P.is_hypersurface:
        return int(P.equation.order_at(c.pvars).value)
    if not P.gens:
        return 1
    if frame is None:
        raise PresentationError("multiplicity of a multi-generator presentation needs a frame")
    from .transversal import transversal_at_prime

    if not transversal_at_prime(frame, c.pvars).ok:
        raise PresentationError(f"the frame is not transversal at {c}")
    return frame.generic_rank


def recenter(P: LocalRingPresentation, point: Mapping[str, object]) -> LocalRingPresentation:
    """Translate so that ``point`` becomes the origin: x_i -> x_i + c_i."""
    from .polyring import substitute

    ring = P.ring
    shift = {v: ring.var(v) + ring.const(cv) for v, cv in point.items() if ring.field(cv) != 0}
    for v in point:
        ring.index(v)
    if not shift:
        return P
    gens = []
    for g in P.gens:
        h = substitute(g, shift, ring)
        if h.constant_term() != 0:
            raise PresentationError(f"point {dict(point)} is not on the variety ({g} does not vanish)")
        gens.append(h)
    Q = LocalRingPresentation(ring, tuple(gens), P.dim)
    return Q


def shift_element(g: Polynomial, point: Mapping[str, object]) -> Polynomial:
    """Express an element in the coordinates produced by :func:`recenter`."""
    from .polyring import substitute

    ring = g.ring
    shift = {v: ring.var(v) + ring.const(cv) for v, cv in point.items()}
    return substitute(g, shift, ring) if shift else g


def parse_ring_file(text: str, check_reduced: bool = True) -> LocalRingPresentation:
    """Parse the line-oriented ring format (field / vars / ideal / dim, '#' comments)."""
    field_spec = None
    variables = None
    ideal_lines = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            parts = rest.split()
            if parts == ["Q"]:
                field_spec = FieldSpec(0)
            elif len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
                try:
                    field_spec = FieldSpec(int(parts[1]))
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            else:
                raise ParseError(f"bad field line {line!r}", lineno)
        elif head == "vars":
            variables = rest.split()
            if not variables:
                raise ParseError("no variables declared", lineno)
            for v in variables:
                if not v[0].isalpha() or not all(ch.isalnum() or ch == "_" for ch in v):
                    raise ParseError(f"bad variable name {v!r}", lineno)
        elif head == "ideal":
            if not rest:
                raise ParseError("empty ideal line", lineno)
            ideal_lines.append((lineno, rest))
        elif head == "dim":
            if not rest.isdigit():
                raise ParseError(f"bad dim line {line!r}", lineno)
            dim = int(rest)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if field_spec is None:
        raise ParseError("missing 'field' line")
    if variables is None:
        raise ParseError("missing 'vars' line")
    try:
        ring = PolyRing(field_spec, tuple(variables))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    gens = []
    for lineno, expr in ideal_lines:
        try:
            gens.append(ring.parse(expr))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    P = LocalRingPresentation(ring, tuple(gens), dim)
    if len(P.gens) > 1 and dim is None:
        raise ParseError("'dim' is required for multi-generator ideals")
    if len(P.gens) > 1:
        embedding_data(P)
    if check_reduced:
        P.check_reduced()
    return P
