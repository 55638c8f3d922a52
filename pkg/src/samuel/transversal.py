"""Finite-transversal frames S = k[base] ⊂ B and characteristic polynomials over S.

A hypersurface frame is a choice of fiber variable z, after a linear change of
coordinates, in which the equation is monic in z of degree equal to its order
at the center.  Elements of B then have characteristic polynomials over S
computed as resultants Res_z(F, w - g).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import NotTransversalError, PresentationError, SearchExhaustedError
from .idealcalc import GroebnerBasis, eliminate, groebner, reduce_full
from .localring import Center, LocalRingPresentation
from .polyring import GREVLEX, INF, OrderValue, Polynomial, PolyRing, block_order, resultant_in_var, substitute

SEARCH_BOUND = 8


@dataclass(frozen=True)
class LinearChange:
    """Old coordinates in terms of new ones: x_old[i] = sum_j matrix[i][j] * x_new[j]."""

    ring: PolyRing
    matrix: tuple

    @classmethod
    def identity(cls, ring: PolyRing) -> "LinearChange":
        F = ring.field
        n = ring.nvars
        return cls(ring, tuple(tuple(F(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def shear(cls, ring: PolyRing, i: int, j: int, c) -> "LinearChange":
        """x_i -> x_i + c * x_j."""
        ident = cls.identity(ring)
        rows = [list(r) for r in ident.matrix]
        rows[i][j] = ring.field(c)
        return cls(ring, tuple(tuple(r) for r in rows))

    def __post_init__(self):
        if self.determinant() == 0:
            raise ValueError("linear change is not invertible")

    @property
    def is_identity(self) -> bool:
        return self == LinearChange.identity(self.ring)

    def then(self, other: "LinearChange") -> "LinearChange":
        F = self.ring.field
        n = self.ring.nvars
        A, B = self.matrix, other.matrix
        return LinearChange(
            self.ring,
            tuple(tuple(F(sum(A[i][k] * B[k][j] for k in range(n))) for j in range(n)) for i in range(n)),
        )

    def determinant(self):
        F = self.ring.field
        M = [list(r) for r in self.matrix]
        n = len(M)
        det = F(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if M[i][k] != 0), None)
            if piv is None:
                return F(0)
            if piv != k:
                M[k], M[piv] = M[piv], M[k]
                det = F(-det)
            det = F(det * M[k][k])
            inv = F.inv(M[k][k])
            for i in range(k + 1, n):
                f = F(M[i][k] * inv)
                if f:
                    M[i] = [F(a - f * b) for a, b in zip(M[i], M[k])]
        return det

    def inverse(self) -> "LinearChange":
        F = self.ring.field
        n = self.ring.nvars
        M = [list(r) + [F(int(i == j)) for j in range(n)] for i, r in enumerate(self.matrix)]
        for k in range(n):
            piv = next(i for i in range(k, n) if M[i][k] != 0)
            M[k], M[piv] = M[piv], M[k]
            inv = F.inv(M[k][k])
            M[k] = [F(a * inv) for a in M[k]]
            for i in range(n):
                if i != k and M[i][k] != 0:
                    f = M[i][k]
                    M[i] = [F(a - f * b) for a, b in zip(M[i], M[k])]
        return LinearChange(self.ring, tuple(tuple(r[n:]) for r in M))

    def apply(self, g: Polynomial) -> Polynomial:
        if self.is_identity:
            return g
        ring = self.ring
        images = {}
        for i, v in enumerate(ring.variables):
            img = ring.zero()
            for j, c in enumerate(self.matrix[i]):
                if c:
                    img = img + ring.var(ring.variables[j]).scale(c)
            images[v] = img
        return substitute(g, images, ring)

    def preserves(self, pvars: Iterable[str]) -> bool:
        """True when the monomial prime <pvars> has the same generators in both coordinates."""
        idx = {self.ring.index(v) for v in pvars}
        return all(self.matrix[i][j] == 0 for i in idx for j in range(self.ring.nvars) if j not in idx)

    def describe(self) -> list:
        """Human-readable substitutions, one per changed variable."""
        names = self.ring.variables
        out = []
        for i, v in enumerate(names):
            img = self.ring.zero()
            for j, c in enumerate(self.matrix[i]):
                if c:
                    img = img + self.ring.var(names[j]).scale(c)
            if img != self.ring.var(v):
                out.append(f"{v} -> {img}")
        return out


@dataclass(frozen=True)
class TransversalCheck:
    ok: bool
    degree: int
    order: OrderValue
    coefficient_orders: tuple
    failing_index: int | None = None
    reason: str = ""


@dataclass(frozen=True)
class TransversalFrame:
    original: LocalRingPresentation
    presentation: LocalRingPresentation
    base_vars: tuple
    fiber_vars: tuple
    change: LinearChange
    wring: PolyRing
    wvar: str
    charpolys: dict = field(hash=False, compare=False)
    generic_rank: int = 1
    partial: bool = False
    center: Center | None = None

    @property
    def ring(self) -> PolyRing:
        return self.presentation.ring

    @property
    def is_hypersurface(self) -> bool:
        return self.presentation.is_hypersurface

    @property
    def equation(self) -> Polynomial:
        """The monic defining polynomial in frame coordinates (hypersurfaces)."""
        z = self.fiber_vars[0]
        return _to_ring(self.charpolys[z], self.wvar, z, self.ring)

    def to_frame(self, g: Polynomial) -> Polynomial:
        return self.change.apply(g)

    def from_frame(self, g: Polynomial) -> Polynomial:
        return self.change.inverse().apply(g)

    def charpoly(self, g: Polynomial, *, in_frame: bool = False) -> Polynomial:
        return char_poly_of_element(self, g, in_frame=in_frame)

    def summary(self) -> dict:
        return {
            "base": list(self.base_vars),
            "fiber": list(self.fiber_vars),
            "change": self.change.describe(),
            "matrix": [[str(c) for c in row] for row in self.change.matrix],
            "generic_rank": self.generic_rank,
            "charpolys": {v: charpoly_str(p, self.wvar) for v, p in self.charpolys.items()},
            "partial": self.partial,
        }


def _to_ring(chi: Polynomial, wvar: str, z: str, ring: PolyRing) -> Polynomial:
    """Rename the w variable of ``chi`` to the fiber variable ``z`` (w-ring -> ring)."""
    wi = chi.ring.index(wvar)
    zi = ring.index(z)
    out = {}
    for e, c in chi.terms.items():
        ne = list(e[:wi] + e[wi + 1:])
        ne[zi] += e[wi]
        out[tuple(ne)] = c
    return Polynomial(ring, out)


def charpoly_str(chi: Polynomial, wvar: str) -> str:
    """Print with descending powers of w first."""
    return chi.to_string(block_order([chi.ring.index(wvar)]))


def w_coefficients(chi: Polynomial, wvar: str) -> list:
    """[a_1, ..., a_m] for chi = w^m + a_1 w^(m-1) + ... + a_m."""
    parts = chi.coefficients_in(wvar)
    m = max(parts)
    zero = chi.ring.zero()
    return [parts.get(m - j, zero) for j in range(1, m + 1)]


def coefficient_orders(chi: Polynomial, wvar: str, qvars: Sequence[str]) -> list:
    return [a.order_at(qvars) if qvars else (INF if a.is_zero() else OrderValue(0))
            for a in w_coefficients(chi, wvar)]


def _monic_in(F: Polynomial, z: str) -> Polynomial | None:
    parts = F.coefficients_in(z)
    top = max(parts)
    lead = parts[top]
    if top == 0 or not lead.is_constant():
        return None
    return F.scale(F.ring.field.inv(lead.constant_term()))


def _check_monic(F: Polynomial, z: str, qvars: Sequence[str]) -> TransversalCheck:
    m = F.degree(z)
    parts = F.coefficients_in(z)
    orders = tuple(parts[m - j].order_at(qvars) if (m - j) in parts and qvars
                   else (INF if (m - j) not in parts else OrderValue(0))
                   for j in range(1, m + 1))
    failing = next((j for j, o in enumerate(orders, start=1) if o < j), None)
    total = F.order_at(list(qvars) + [z])
    return TransversalCheck(failing is None, m, total, orders, failing,
                            "" if failing is None else f"coefficient a_{failing} has order {orders[failing - 1]} < {failing}")


def check_transversal(P: LocalRingPresentation, base: Sequence[str], fiber: str) -> TransversalCheck:
    """Is k[base] ⊂ B finite-transversal at the origin with primitive element ``fiber``?"""
    if not P.is_hypersurface:
        raise PresentationError("check_transversal takes a hypersurface")
    base = tuple(base)
    if set(base) | {fiber} != set(P.ring.variables) or fiber in base:
        raise PresentationError("base and fiber must partition the variables")
    F = _monic_in(P.equation, fiber)
    if F is None:
        raise NotTransversalError(f"{P.equation} is not monic-normalizable in {fiber}")
    return _check_monic(F, fiber, base)


def _hypersurface_frame(P, Q, base, fiber, change, center) -> TransversalFrame:
    F = _monic_in(Q.equation, fiber)
    ring = Q.ring
    wvar = ring.fresh_name("w")
    wring = ring.extend([wvar])
    chi = substitute(F.embed(wring), {fiber: wring.var(wvar)}, wring)
    Qn = LocalRingPresentation(ring, (F,), Q.dim)
    return TransversalFrame(P, Qn, tuple(base), (fiber,), change, wring, wvar,
                            {fiber: chi}, F.degree(fiber), False, center)


def frame_from_variables(P: LocalRingPresentation, base: Sequence[str], fiber: Sequence[str] | str | None = None,
                         center: Center | None = None) -> TransversalFrame:
    """Validate an explicit frame with the identity change; raise if not transversal."""
    center = center or Center.origin(P.ring)
    base = tuple(v for v in P.ring.variables if v in set(base))
    for v in base:
        P.ring.index(v)
    if isinstance(fiber, str):
        fiber = (fiber,)
    if fiber is None:
        fiber = tuple(v for v in P.ring.variables if v not in base)
    fiber = tuple(fiber)
    ident = LinearChange.identity(P.ring)
    if P.is_hypersurface:
        if len(fiber) != 1:
            raise PresentationError("a hypersurface frame has exactly one fiber variable")
        chk = check_transversal(P, base, fiber[0])
        if not chk.ok:
            raise NotTransversalError(f"k[{','.join(base)}] is not transversal: {chk.reason}")
        frame = _hypersurface_frame(P, P, base, fiber[0], ident, center)
    else:
        frame = _general_frame(P, base, fiber, center)
    if not center.is_origin:
        rep = transversal_at_prime(frame, center.pvars)
        if not rep.ok:
            raise NotTransversalError(f"frame is not transversal at {center}: {rep.reason}")
    return frame


def _generic_rank(P: LocalRingPresentation, fiber: Sequence[str]) -> int:
    """dim over K(S) of K(S) ⊗ B, counting standard fiber monomials of a block basis."""
    ring = P.ring
    fidx = [ring.index(v) for v in fiber]
    G = groebner(P.gens, block_order(fidx), ring)
    leads = [tuple(g.leading_monomial(G.order)[i] for i in fidx) for g in G.gens]
    bounds = []
    for k in range(len(fidx)):
        pure = [l[k] for l in leads if all(x == 0 for j, x in enumerate(l) if j != k) and l[k] > 0]
        if not pure:
            raise NotTransversalError("projection is not finite: infinitely many standard monomials")
        bounds.append(min(pure))
    count = 0
    for e in product(*(range(b) for b in bounds)):
        if not any(all(x <= y for x, y in zip(l, e)) for l in leads):
            count += 1
    return count


def _general_frame(P, base, fiber, center) -> TransversalFrame:
    ring = P.ring
    wvar = ring.fresh_name("w")
    wring = ring.extend([wvar])
    charpolys = {}
    for theta in fiber:
        charpolys[theta] = _eliminate_charpoly(P, ring.var(theta), base, wring, wvar)
    rank = _generic_rank(P, fiber)
    frame = TransversalFrame(P, P, tuple(base), tuple(fiber), LinearChange.identity(ring), wring, wvar,
                             charpolys, rank, True, center)
    for theta, chi in charpolys.items():
        orders = coefficient_orders(chi, wvar, base)
        bad = next((j for j, o in enumerate(orders, start=1) if o < j), None)
        if bad is not None:
            raise NotTransversalError(f"{theta}: coefficient a_{bad} of {chi} has order {orders[bad - 1]} < {bad}")
    return frame


def _eliminate_charpoly(P, g, base, wring, wvar) -> Polynomial:
    gens = [h.embed(wring) for h in P.gens] + [wring.var(wvar) - g.embed(wring)]
    E = eliminate(GroebnerBasis(tuple(gens), GREVLEX, wring, False), list(base) + [wvar])
    if len(E.gens) != 1:
        raise NotTransversalError(f"elimination ideal for {g} is not principal")
    chi = E.gens[0]
    parts = chi.coefficients_in(wvar)
    lead = parts[max(parts)]
    if max(parts) == 0 or not lead.is_constant():
        raise NotTransversalError(f"minimal polynomial of {g} is not monic over k[{','.join(base)}]")
    return chi.scale(wring.field.inv(lead.constant_term()))


def char_poly_of_element(frame: TransversalFrame, g: Polynomial, *, in_frame: bool = False) -> Polynomial:
    """Monic polynomial over k[base] in the frame's w variable that annihilates g.

    ``g`` is given in the original coordinates unless ``in_frame`` is set.
    """
    if not in_frame:
        g = frame.to_frame(g)
    wring, wvar = frame.wring, frame.wvar
    w = wring.var(wvar)
    if not frame.is_hypersurface:
        return _eliminate_charpoly(frame.presentation, g, frame.base_vars, wring, wvar)
    z = frame.fiber_vars[0]
    F = frame.equation
    m = F.degree(z)
    g = reduce_full(g, [F], block_order([frame.ring.index(z)]))
    gw = g.embed(wring)
    if g.degree(z) <= 0:
        return (w - gw) ** m
    res = resultant_in_var(F.embed(wring), w - gw, z)
    parts = res.coefficients_in(wvar)
    lead = parts[max(parts)]
    if max(parts) != m or not lead.is_constant():
        raise NotTransversalError(f"resultant for {g} is not monic of degree {m}")
    return res.scale(wring.field.inv(lead.constant_term()))


@dataclass(frozen=True)
class PrimeTransversality:
    ok: bool
    pvars: tuple
    qvars: tuple
    coefficient_orders: dict
    reason: str = ""


def transversal_at_prime(frame: TransversalFrame, pvars: Iterable[str]) -> PrimeTransversality:
    """Does the frame stay transversal at the monomial prime <pvars>?

    Needs every fiber variable in pvars and nu_q(a_j) >= j for each fiber
    characteristic polynomial, with q = pvars ∩ base.
    """
    pvars = tuple(v for v in frame.ring.variables if v in set(pvars))
    qvars = tuple(v for v in frame.base_vars if v in pvars)
    if not frame.change.preserves(pvars):
        return PrimeTransversality(False, pvars, qvars, {}, "the coordinate change moves the prime")
    missing = [v for v in frame.fiber_vars if v not in pvars]
    if missing:
        return PrimeTransversality(False, pvars, qvars, {}, f"fiber variables {missing} outside the prime")
    orders = {}
    reason = ""
    ok = True
    for theta, chi in frame.charpolys.items():
        ords = coefficient_orders(chi, frame.wvar, qvars)
        orders[theta] = tuple(ords)
        bad = next((j for j, o in enumerate(ords, start=1) if o < j), None)
        if bad is not None and ok:
            ok = False
            reason = f"{theta}: coefficient a_{bad} has order {ords[bad - 1]} < {bad} at <{','.join(qvars)}>"
    return PrimeTransversality(ok, pvars, qvars, orders, reason)


def _coefficient_range(ring: PolyRing, bound: int) -> list:
    p = ring.field.characteristic
    if p:
        return list(range(1, p))
    out = []
    for c in range(1, bound + 1):
        out += [c, -c]
    return out


def candidate_changes(ring: PolyRing, center: Center | None = None, bound: int = SEARCH_BOUND) -> Iterator[LinearChange]:
    """Identity, then single shears x_i -> x_i + c*x_j, then products of two shears."""
    center = center or Center.origin(ring)
    pidx = {ring.index(v) for v in center.pvars}
    n = ring.nvars
    coeffs = _coefficient_range(ring, bound)
    shears = []
    for c in coeffs:
        for i in range(n):
            for j in range(n):
                if i != j and (i not in pidx or j in pidx):
                    shears.append(LinearChange.shear(ring, i, j, c))
    yield LinearChange.identity(ring)
    yield from shears
    for a, b in product(shears, repeat=2):
        if a != b:
            try:
                yield a.then(b)
            except ValueError:
                continue


def find_transversal_frame(P: LocalRingPresentation, center: Center | None = None,
                           bound: int = SEARCH_BOUND) -> TransversalFrame:
    """First transversal hypersurface frame in the deterministic enumeration of changes."""
    if not P.is_hypersurface:
        raise PresentationError("automatic frame search needs a hypersurface; supply --base/--fiber")
    center = center or Center.origin(P.ring)
    ring = P.ring
    F0 = P.equation
    m = int(F0.order_at(center.pvars).value)
    tried = 0
    for change in candidate_changes(ring, center, bound):
        tried += 1
        F = change.apply(F0)
        for z in center.pvars:
            if F.degree(z) != m:
                continue
            Fm = _monic_in(F, z)
            if Fm is None:
                continue
            qvars = [v for v in center.pvars if v != z]
            if not _check_monic(Fm, z, qvars).ok:
                continue
            base = tuple(v for v in ring.variables if v != z)
            Q = LocalRingPresentation(ring, (F,), P.dim)
            return _hypersurface_frame(P, Q, base, z, change, center)
    raise SearchExhaustedError(f"no transversal frame for {F0} at {center} among linear changes over {ring.field}", tried)
