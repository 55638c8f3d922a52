import random
from math import ceil, factorial

from samuel.corpus import CHAR2, CUSP, XY_Z3, Y2_ZX3, whitney
from samuel.localring import Center, parse_ring_file, recenter, samuel_limit_oracle
from samuel.polyring import Polynomial
from samuel.samuelfn import hickel_order, hickel_value
from samuel.slope import primitive_slope
from samuel.transversal import find_transversal_frame

RINGS = {
    "cusp": CUSP,
    "xy-z3": XY_Z3,
    "y2+zx3": Y2_ZX3,
    "char2": CHAR2,
    "whitney2": whitney(2),
    "whitney3": whitney(3),
    "whitney5": whitney(5),
}

# (ring, element, center pvars or None for the origin, expected value)
ELEMENTS = [
    ("cusp", "x", None, "3/2"),
    ("cusp", "y", None, "1"),
    ("cusp", "x^2", None, "3"),
    ("cusp", "x*y", None, "5/2"),
    ("xy-z3", "x", None, "1"),
    ("xy-z3", "y", None, "1"),
    ("xy-z3", "z", None, "1"),
    ("xy-z3", "x*y", None, "3"),
    ("xy-z3", "x*z", None, "2"),
    ("xy-z3", "y*z", None, "2"),
    ("y2+zx3", "z", None, "1"),
    ("y2+zx3", "y", None, "2"),
    ("char2", "x", None, "2"),
    ("char2", "x+y^2", None, "5/2"),
    ("char2", "y", None, "1"),
    ("whitney2", "x", None, "3/2"),
    ("whitney2", "x", ("x", "y1"), "1"),
    ("whitney3", "x", None, "4/3"),
    ("whitney3", "x", ("x", "y1"), "1"),
]


# (ring, center pvars or None, recentering value for y2 or None) for slope traces
SLOPE_CASES = [("char2", None, None), ("xy-z3", None, None), ("cusp", None, None), ("y2+zx3", None, None)]
for _p in (2, 3, 5):
    SLOPE_CASES += [(f"whitney{_p}", None, None), (f"whitney{_p}", ("x", "y1"), None)]
    SLOPE_CASES += [(f"whitney{_p}", None, c) for c in range(1, _p)]


def ring(name):
    return parse_ring_file(RINGS[name])


def center(P, pvars):
    return Center.prime(P.ring, pvars) if pvars else Center.origin(P.ring)


def slope_setup(name, pvars, c):
    P = ring(name)
    if c is not None:
        P = recenter(P, {"y2": c})
    cen = center(P, pvars)
    return P, cen, find_transversal_frame(P, cen)


def random_poly(rng: random.Random, R, max_deg=3, max_terms=4, coeff=3, variables=None, constant=False):
    variables = list(variables or R.variables)
    idx = [R.index(v) for v in variables]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * R.nvars
        d = rng.randint(0 if constant else 1, max_deg)
        for _ in range(d):
            e[rng.choice(idx)] += 1
        c = rng.randint(-coeff, coeff)
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return Polynomial(R, {e: R.field(c) for e, c in terms.items()})


def differential_failures(P, g, c, frame, n_max=8):
    """Oracle running max <= Hickel value for n <= n_max, equality at some n <= 2*denominator."""
    cert = hickel_order(frame, g, c)
    res = samuel_limit_oracle(P, g, c, n_max)
    out = []
    if cert.value.is_infinite:
        return out if res.best.is_infinite else [f"{g}: oracle {res.best} but hickel inf"]
    for n, v in enumerate(res.values, start=1):
        if v > cert.value:
            out.append(f"{g}: oracle n={n} gives {v} > hickel {cert.value}")
    bound = 2 * cert.value.denominator
    if bound > n_max:
        res = samuel_limit_oracle(P, g, c, bound)
    if not any(v == cert.value for v in res.values[:bound]):
        out.append(f"{g}: oracle never reaches {cert.value} for n <= {bound}: {[str(v) for v in res.values]}")
    return out


def order_axiom_failures(P, pairs, frame, c=None):
    """Superadditivity of the asymptotic order on sums and products (Hickel route)."""
    out = []

    def nu(h):
        return hickel_order(frame, h, c).value

    one = P.ring.one()
    if nu(one) != 0 or not nu(P.ring.zero()).is_infinite:
        out.append("nu(1) = 0 and nu(0) = inf")
    for f, g in pairs:
        of, og = nu(f), nu(g)
        if nu(f + g) < min(of, og):
            out.append(f"sum {f} , {g}")
        if nu(f * g) < of + og:
            out.append(f"product {f} , {g}")
    return out


def random_pairs(P, n, seed):
    rng = random.Random(seed)
    return [(random_poly(rng, P.ring), random_poly(rng, P.ring)) for _ in range(n)]


def divides_factorial(value, rank):
    return value.is_infinite or factorial(rank) % value.denominator == 0



def slope_trace_failures(P, c, frame, probes=8, seed=11):
    """Strict ascent of each translation trace and soundness of its stop value."""
    qvars = [v for v in frame.base_vars if v in c.pvars]
    rng = random.Random(seed)
    out = []
    for theta in frame.fiber_vars:
        gs = primitive_slope(frame, theta, c)
        qs = [st.q for st in gs.steps]
        if any(a >= b for a, b in zip(qs, qs[1:])):
            out.append(f"{theta}: q not strictly increasing {[str(q) for q in qs]}")
        if any(not q.is_integer for q in qs[:-1]):
            out.append(f"{theta}: translated at a non-integer q")
        for st in gs.steps[:-1]:
            if st.alpha.order_at(qvars) != st.q:
                out.append(f"{theta}: translation {st.alpha} not of order {st.q}")
        q = gs.value
        stopped = P.ring.var(theta) - gs.translation
        if hickel_value(frame.charpoly(stopped, in_frame=True), frame.wvar, qvars)[0] != q:
            out.append(f"{theta}: translated generator does not have order {q}")
        if q.is_infinite or q.is_integer:
            continue
        top = ceil(q.value)
        for _ in range(probes):
            deg = rng.choice([top - 1, top])
            s = random_poly(rng, P.ring, deg, 3, variables=qvars).homogeneous_part(qvars, deg)
            if s.is_zero():
                continue
            v = hickel_value(frame.charpoly(stopped + s, in_frame=True), frame.wvar, qvars)[0]
            if v > q:
                out.append(f"{theta}: adding {s} raises the order to {v} > {q}")
    return out


# filled by the acceptance suite, printed in the terminal summary
ACCEPTANCE_LINES = []
