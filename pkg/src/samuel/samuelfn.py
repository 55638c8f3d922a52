"""The asymptotic Samuel function at the origin and at monomial primes.

Three routes compute the value:

* ``hickel``: from a transversal frame, as min_i nu(a_i)/i over the coefficients
  of the characteristic polynomial of the element (exact);
* ``regular-local``: when the local ring is regular, the asymptotic function is
  the ordinary order (exact);
* ``oracle``: the limit definition sampled at n = 1..n_max (a lower bound).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotTransversalError, PresentationError, SearchExhaustedError
from .localring import (
    DEFAULT_NMAX,
    DEFAULT_ORDER_CAP,
    Center,
    LocalRingPresentation,
    _check_center,
    _in_monomial_prime,
    embedding_data,
    is_zero_at_center,
    local_order,
    samuel_limit_oracle,
)
from .polyring import INF, OrderValue, Polynomial
from .transversal import (
    TransversalFrame,
    charpoly_str,
    coefficient_orders,
    find_transversal_frame,
    transversal_at_prime,
)


@dataclass(frozen=True)
class OrderCertificate:
    value: OrderValue
    route: str
    certified: bool
    witness: dict = field(default_factory=dict, compare=False)
    trace: tuple = ()
    diagnostics: tuple = ()


def hickel_value(chi: Polynomial, wvar: str, qvars) -> tuple:
    """(min_i nu_q(a_i)/i, minimizing index, nu_q of that coefficient)."""
    orders = coefficient_orders(chi, wvar, qvars)
    best, idx = INF, None
    for i, o in enumerate(orders, start=1):
        v = o / i
        if v < best:
            best, idx = v, i
    return best, idx, (orders[idx - 1] if idx else INF)


def hickel_order(frame: TransversalFrame, g: Polynomial, c: Center | None = None) -> OrderCertificate:
    c = c or Center.origin(frame.original.ring)
    rep = transversal_at_prime(frame, c.pvars)
    if not rep.ok:
        raise NotTransversalError(f"frame is not transversal at {c}: {rep.reason}")
    chi = frame.charpoly(g)
    value, idx, order = hickel_value(chi, frame.wvar, rep.qvars)
    witness = {"index": idx, "coefficient_order": str(order), "charpoly": charpoly_str(chi, frame.wvar),
               "base": list(frame.base_vars), "fiber": list(frame.fiber_vars)}
    diags = ("frame only partially validated: reducedness and dimension are user-asserted",) if frame.partial else ()
    return OrderCertificate(value, "hickel", True, witness, (), diags)


def is_regular_at(P: LocalRingPresentation, c: Center) -> bool:
    if not P.gens:
        return True
    if P.is_hypersurface:
        return P.equation.order_at(c.pvars) == 1
    return embedding_data(P, c)[1] == 0


def _oracle_certificate(P, g, c, n_max, cap, localized=True) -> OrderCertificate:
    res = samuel_limit_oracle(P, g, c, n_max, cap, localized=localized)
    trace = tuple(f"n={n}: {v}" for n, v in enumerate(res.values, start=1))
    diags = () if res.certified else (f"lower bound from n <= {n_max}; NOT CERTIFIED",)
    return OrderCertificate(res.best, "oracle", res.certified,
                            {"n": res.best_n, "values": [str(v) for v in res.values]}, trace, diags)


def _frame_for(P, c, frame):
    if frame is not None:
        return frame
    if not P.is_hypersurface:
        raise PresentationError("a multi-generator presentation needs an explicit frame (base/fiber)")
    return find_transversal_frame(P, c)


def samuel_order(P: LocalRingPresentation, g: Polynomial, c: Center | None = None, strategy: str = "auto",
                 n_max: int = DEFAULT_NMAX, cap: int = DEFAULT_ORDER_CAP,
                 frame: TransversalFrame | None = None) -> OrderCertificate:
    """Asymptotic Samuel function of g at the center, with the route that produced it."""
    c = c or Center.origin(P.ring)
    _check_center(P, c)
    if strategy not in ("auto", "hickel", "oracle"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "oracle":
        return _oracle_certificate(P, g, c, n_max, cap)
    if is_zero_at_center(P, g, c):
        return OrderCertificate(INF, "membership", True, {"reason": "g vanishes in the local ring"})
    if not _in_monomial_prime(g, c.pvars):
        return OrderCertificate(OrderValue(0), "membership", True, {"reason": "g is a unit"})
    if strategy == "hickel":
        return hickel_order(_frame_for(P, c, frame), g, c)
    if is_regular_at(P, c):
        v = local_order(P, g, c, cap)
        return OrderCertificate(v, "regular-local", True, {"reason": "regular local ring"})
    try:
        return hickel_order(_frame_for(P, c, frame), g, c)
    except (SearchExhaustedError, NotTransversalError, PresentationError) as exc:
        cert = _oracle_certificate(P, g, c, n_max, cap)
        return OrderCertificate(cert.value, cert.route, cert.certified, cert.witness, cert.trace,
                                cert.diagnostics + (f"no frame: {exc}",))


def samuel_order_nonlocalized_at_prime(P: LocalRingPresentation, g: Polynomial, pvars,
                                       n_max: int = DEFAULT_NMAX, cap: int = DEFAULT_ORDER_CAP,
                                       frame: TransversalFrame | None = None) -> OrderCertificate:
    """Asymptotic function of g along p^a + I, without localizing at p.

    The oracle gives lower bounds.  Because p^a is contained in both m^a and
    p^a B_p, the certified values at the origin and in B_p are upper bounds;
    the value is certified when the bounds meet.
    """
    c = Center.prime(P.ring, pvars)
    _check_center(P, c)
    res = samuel_limit_oracle(P, g, c, n_max, cap, localized=False)
    trace = tuple(f"n={n}: {v}" for n, v in enumerate(res.values, start=1))
    witness = {"n": res.best_n, "values": [str(v) for v in res.values]}
    if res.certified:
        return OrderCertificate(res.best, "oracle", True, witness, trace)
    uppers = []
    for center in [c] + ([] if c.is_origin else [Center.origin(P.ring)]):
        try:
            cert = samuel_order(P, g, center, "auto", n_max, cap, frame if center == c else None)
        except (SearchExhaustedError, NotTransversalError, PresentationError):
            continue
        if cert.certified:
            uppers.append((cert.value, str(center)))
    diags = []
    if uppers:
        upper, where = min(uppers)
        witness["upper_bound"] = f"{upper} (at {where})"
        if upper == res.best:
            return OrderCertificate(res.best, "oracle", True, witness, trace)
        diags.append(f"bounds {res.best} <= value <= {upper}")
    diags.append(f"lower bound from n <= {n_max}; NOT CERTIFIED")
    return OrderCertificate(res.best, "oracle", False, witness, trace, tuple(diags))
