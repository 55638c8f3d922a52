"""Exact scalars, sparse multivariate polynomials, monomial orders and resultants.

Coefficients are :class:`fractions.Fraction` over the rationals and canonical
least residues ``0..p-1`` over a prime field.  Polynomials are immutable and
store their terms in a dict keyed by exponent tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping

from .errors import ParseError, RingMismatchError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: ``characteristic == 0`` for Q, else F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p != 0 and not is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    def __call__(self, value):
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / Fraction(a)

    def div(self, a, b):
        p = self.characteristic
        if p:
            return a * self.inv(b) % p
        return Fraction(a) / b

    def root(self, c, k: int):
        """Return the k-th root of ``c`` where k is a power of the characteristic.

        Frobenius is the identity on F_p, so every element is its own p-th root.
        """
        p = self.characteristic
        if not p or k == 1:
            if k != 1:
                raise ValueError("p-th roots only exist in positive characteristic")
            return c
        assert pow(c, k, p) == c
        return c

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = FieldSpec(0)


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a block order whose ``front`` indices are eliminated.

    Inside each block of a block order monomials compare by grevlex.
    """

    kind: str = "grevlex"
    front: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e):
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return e
        fr = self.front
        a = tuple(e[i] for i in fr)
        b = tuple(x for i, x in enumerate(e) if i not in fr)
        return (_grevlex_key(a), _grevlex_key(b))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(front: Iterable[int]) -> MonomialOrder:
    return MonomialOrder("block", tuple(sorted(front)))


@total_ordering
class OrderValue:
    """A non-negative rational or infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None:
            value = Fraction(value)
            if value < 0:
                raise ValueError("order values are non-negative")
        self.value = value

    @classmethod
    def inf(cls) -> "OrderValue":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def is_integer(self) -> bool:
        return self.value is not None and self.value.denominator == 1

    @property
    def denominator(self) -> int:
        return 1 if self.value is None else self.value.denominator

    def __eq__(self, other):
        if not isinstance(other, OrderValue):
            if self.value is None:
                return False
            try:
                return self.value == Fraction(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        if not isinstance(other, OrderValue):
            other = OrderValue(other)
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __add__(self, other):
        if not isinstance(other, OrderValue):
            other = OrderValue(other)
        if self.value is None or other.value is None:
            return INF
        return OrderValue(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, k: int):
        if self.value is None:
            return INF if k else OrderValue(0)
        return OrderValue(self.value * k)

    __rmul__ = __mul__

    def __truediv__(self, k: int):
        if self.value is None:
            return INF
        return OrderValue(self.value / k)

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return f"OrderValue({self})"


INF = OrderValue.inf()


@dataclass(frozen=True)
class PolyRing:
    """k[x_1..x_n] with a fixed variable list."""

    field: FieldSpec
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingMismatchError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        if c == 0:
            return self.zero()
        return Polynomial._make(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial._make(self, {tuple(e): self.field(1)})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def extend(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.field, self.variables + tuple(names))

    def fresh_name(self, base: str) -> str:
        name = base
        while name in self.variables:
            name += "_"
        return name

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping | None = None):
        F = ring.field
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != ring.nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            c = F(c)
            if c != 0:
                c = F(clean.get(e, 0) + c)
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self) -> set:
        used = set()
        for e in self.terms:
            used.update(self.ring.variables[i] for i, x in enumerate(e) if x)
        return used

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def coefficients_in(self, var: str) -> dict:
        """Split as a polynomial in ``var``: {power: coefficient polynomial}."""
        i = self.ring.index(var)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Polynomial._make(self.ring, d) for k, d in out.items()}

    def order_at(self, qvars: Iterable[str]) -> OrderValue:
        idx = [self.ring.index(v) for v in qvars]
        if not self.terms:
            return INF
        return OrderValue(min(sum(e[i] for i in idx) for e in self.terms))

    def initial_form(self, qvars: Iterable[str]) -> "Polynomial":
        """Sum of the terms of least degree in the ``qvars`` variables."""
        idx = [self.ring.index(v) for v in qvars]
        if not self.terms:
            return self
        degs = {e: sum(e[i] for i in idx) for e in self.terms}
        low = min(degs.values())
        return Polynomial._make(self.ring, {e: c for e, c in self.terms.items() if degs[e] == low})

    def homogeneous_part(self, qvars: Iterable[str], degree: int) -> "Polynomial":
        idx = [self.ring.index(v) for v in qvars]
        return Polynomial._make(
            self.ring, {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == degree}
        )

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.const(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial._make(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Polynomial._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        p = self.ring.field.characteristic
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial._make(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        p = F.characteristic
        if p:
            return Polynomial._make(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Polynomial._make(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, mono, c) -> "Polynomial":
        p = self.ring.field.characteristic
        out = {}
        for e, v in self.terms.items():
            v = v * c
            if p:
                v %= p
            out[tuple(a + b for a, b in zip(e, mono))] = v
        return Polynomial._make(self.ring, out)

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def diff(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Polynomial(self.ring, out)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        other = self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        lm = other.leading_monomial()
        lc_inv = F.inv(other.terms[lm])
        if len(other.terms) == 1:
            out = {}
            for e, c in self.terms.items():
                d = tuple(a - b for a, b in zip(e, lm))
                if min(d, default=0) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[d] = F(c * lc_inv)
            return Polynomial._make(self.ring, out)
        q: dict = {}
        r = self
        while r.terms:
            e = r.leading_monomial()
            d = tuple(a - b for a, b in zip(e, lm))
            if min(d) < 0:
                raise ArithmeticError("inexact polynomial division")
            c = F(r.terms[e] * lc_inv)
            q[d] = c
            r = r - other.mul_term(d, c)
        return Polynomial._make(self.ring, q)

    def embed(self, ring: PolyRing) -> "Polynomial":
        """Map into a ring whose variable list contains this one's, by name."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise RingMismatchError("different coefficient fields")
        idx = [ring.index(v) for v in self.ring.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return Polynomial._make(ring, out)

    def evaluate(self, point: Mapping[str, object]):
        """Value at a point assigning a field constant to every variable used."""
        F = self.ring.field
        total = F(0)
        vals = [F(point[v]) if v in point else None for v in self.ring.variables]
        for e, c in self.terms.items():
            t = c
            for v, x in zip(vals, e):
                if x:
                    if v is None:
                        raise KeyError("point does not assign every variable")
                    t = t * v**x
            total = F(total + t)
        return total

    # -- equality, printing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"

    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                (n if x == 1 else f"{n}^{x}") for n, x in zip(names, e) if x
            )
            neg = self.ring.field.characteristic == 0 and c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-", body) if neg else ("+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def substitute(f: Polynomial, assignment: Mapping[str, Polynomial], ring: PolyRing | None = None):
    """Compose ``f`` with ``var -> polynomial``; unassigned variables map to themselves.

    The images must live in ``ring`` (default: the ring of the images, or of f).
    """
    if ring is None:
        rings = {g.ring for g in assignment.values()}
        if len(rings) > 1:
            raise RingMismatchError("substituted polynomials live in different rings")
        ring = rings.pop() if rings else f.ring
    images = []
    for v in f.ring.variables:
        if v in assignment:
            g = assignment[v]
            if g.ring != ring:
                raise RingMismatchError(f"image of {v} is not in {ring}")
            images.append(g)
        else:
            images.append(ring.var(v))
    powers: list = [dict() for _ in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = images[i] ** k
        return cache[k]

    out = ring.zero()
    for e, c in f.terms.items():
        t = ring.const(c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        out = out + t
    return out


def poly_arith(a: Polynomial, b: Polynomial, kind: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def order_at_monomial_prime(f: Polynomial, qvars: Iterable[str]) -> OrderValue:
    """Order of f at the prime generated by ``qvars`` in the polynomial ring."""
    qvars = list(qvars)
    if not qvars:
        raise ValueError("qvars must be nonempty")
    return f.order_at(qvars)


def bareiss_det(matrix: list) -> Polynomial:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    M = [list(row) for row in matrix]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        piv = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = M[i][j] * piv
                if not mik.is_zero() and not M[k][j].is_zero():
                    num = num - mik * M[k][j]
                M[i][j] = num.exact_div(prev) if not num.is_zero() else num
            M[i][k] = ring.zero()
        prev = piv
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(f: Polynomial, g: Polynomial, v: str) -> list:
    df, dg = f.degree(v), g.degree(v)
    zero = f.ring.zero()
    cf = f.coefficients_in(v)
    cg = g.coefficients_in(v)
    n = df + dg
    rows = []
    for i in range(dg):
        row = [zero] * n
        for k in range(df + 1):
            row[i + df - k] = cf.get(k, zero)
        rows.append(row)
    for i in range(df):
        row = [zero] * n
        for k in range(dg + 1):
            row[i + dg - k] = cg.get(k, zero)
        rows.append(row)
    return rows


def resultant_in_var(f: Polynomial, g: Polynomial, v: str) -> Polynomial:
    """Res_v(f, g) as the Bareiss determinant of the Sylvester matrix."""
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    f.ring.index(v)
    df, dg = f.degree(v), g.degree(v)
    if df <= 0 and dg <= 0:
        raise ValueError(f"variable {v} absent from both inputs")
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    if dg == 0:
        return g**df
    if df == 0:
        return f**dg
    return bareiss_det(sylvester_matrix(f, g, v))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive descent over: expr := term (('+'|'-') term)*, term := unary ('*' unary)*,
    unary := ('-'|'+') unary | power, power := atom ('^' INT)?, atom := INT | IDENT | '(' expr ')'.
    """

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text.replace("−", "-")
        self.tokens = self._lex(self.text)
        self.pos = 0

    def _lex(self, text):
        toks = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i:].strip()[:1]!r} in {self.text!r}")
            if m.group(1):
                toks.append(("int", int(m.group(1))))
            elif m.group(2):
                toks.append(("id", m.group(2)))
            else:
                op = m.group(3)
                toks.append(("op", "^" if op == "**" else op))
            i = m.end()
        return toks

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression")
        out = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def _expr(self):
        acc = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._next()[1]
            rhs = self._term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _term(self):
        acc = self._unary()
        while self._peek() == ("op", "*"):
            self._next()
            acc = acc * self._unary()
        return acc

    def _unary(self):
        tok = self._peek()
        if tok == ("op", "-"):
            self._next()
            return -self._unary()
        if tok == ("op", "+"):
            self._next()
            return self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._next()
            kind, val = self._next()
            if kind != "int":
                raise ParseError(f"'^' needs a non-negative integer literal in {self.text!r}")
            return base**val
        return base

    def _atom(self):
        kind, val = self._next()
        if kind == "int":
            return self.ring.const(val)
        if kind == "id":
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r}")
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            inner = self._expr()
            if self._next() != ("op", ")"):
                raise ParseError(f"missing ')' in {self.text!r}")
            return inner
        if val is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")
