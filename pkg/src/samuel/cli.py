"""Command-line interface: ``samuel <verb> <ringfile> [options]``.

Exit codes: 0 certified, 2 estimate only, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SamuelError
from .localring import (
    DEFAULT_NMAX,
    DEFAULT_ORDER_CAP,
    Center,
    LocalRingPresentation,
    multiplicity,
    parse_ring_file,
    recenter,
    samuel_limit_oracle,
    shift_element,
)
from .samuelfn import samuel_order, samuel_order_nonlocalized_at_prime
from .slope import samuel_slope, semicontinuity_probe
from .transversal import (charpoly_str, check_transversal, find_transversal_frame, frame_from_variables,
                          transversal_at_prime)

__all__ = ["Command", "Report", "run_command", "parse_ring_file", "main"]

VERBS = ("order", "oracle", "mult", "frame", "slope", "probe", "corpus")


@dataclass
class Command:
    verb: str
    ring_text: str = ""
    elem: str | None = None
    prime: list | None = None
    at: list = field(default_factory=list)
    base: list | None = None
    fiber: list | None = None
    search: bool = False
    strategy: str = "auto"
    nmax: int = DEFAULT_NMAX
    cap: int = DEFAULT_ORDER_CAP
    nonlocalized: bool = False
    trace: bool = False


@dataclass
class Report:
    value: str
    certified: bool
    route: str
    trace: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.route == "error":
            return 1
        return 0 if self.certified else 2

    def to_json(self) -> str:
        return json.dumps({"value": self.value, "certified": self.certified, "route": self.route,
                           "trace": self.trace, "diagnostics": self.diagnostics})

    def to_text(self) -> str:
        lines = [f"value: {self.value}", f"certified: {'yes' if self.certified else 'no'}", f"route: {self.route}"]
        if self.trace:
            lines.append("trace:")
            lines += [f"  {t}" for t in self.trace]
        if self.diagnostics:
            lines.append("diagnostics:")
            lines += [f"  {d}" for d in self.diagnostics]
        return "\n".join(lines)


def parse_point(text: str) -> dict:
    """'y2=1,x=0' -> {'y2': Fraction(1), 'x': Fraction(0)}."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, val = part.partition("=")
        if not sep:
            raise SamuelError(f"bad point assignment {part!r}; expected var=value")
        try:
            out[name.strip()] = Fraction(val.strip())
        except ValueError:
            raise SamuelError(f"bad value {val!r} in point assignment") from None
    return out


def _var_list(text: str | None) -> list | None:
    if text is None:
        return None
    return [v.strip() for v in text.split(",") if v.strip()]


def _field_point(P: LocalRingPresentation, point: dict) -> dict:
    return {v: P.ring.field(c) for v, c in point.items()}


def _prepare(cmd: Command):
    P = parse_ring_file(cmd.ring_text)
    point = None
    if cmd.at and cmd.verb != "probe":
        if len(cmd.at) > 1:
            raise SamuelError("--at may be given once for this verb")
        point = _field_point(P, parse_point(cmd.at[0]))
        P = recenter(P, point)
    center = Center.prime(P.ring, cmd.prime) if cmd.prime else Center.origin(P.ring)
    g = None
    if cmd.elem is not None:
        g = P.element(cmd.elem)
        if point:
            g = shift_element(g, point)
    return P, center, g


def _explicit_frame(cmd: Command, P, center):
    if cmd.base is None and cmd.fiber is None:
        return None
    base = cmd.base
    if base is None:
        base = [v for v in P.ring.variables if v not in set(cmd.fiber)]
    return frame_from_variables(P, base, cmd.fiber, center)


def _need_elem(g):
    if g is None:
        raise SamuelError("--elem is required for this verb")


def _run_order(cmd, P, c, g) -> Report:
    _need_elem(g)
    if cmd.nonlocalized:
        if not cmd.prime:
            raise SamuelError("--nonlocalized needs --prime")
        cert = samuel_order_nonlocalized_at_prime(P, g, c.pvars, cmd.nmax, cmd.cap)
    else:
        cert = samuel_order(P, g, c, cmd.strategy, cmd.nmax, cmd.cap, _explicit_frame(cmd, P, c))
    trace = list(cert.trace) if cmd.trace else []
    if cmd.trace:
        trace += [f"witness {k}: {v}" for k, v in cert.witness.items() if k != "values"]
    return Report(str(cert.value), cert.certified, cert.route, trace, list(cert.diagnostics))


def _run_oracle(cmd, P, c, g) -> Report:
    _need_elem(g)
    res = samuel_limit_oracle(P, g, c, cmd.nmax, cmd.cap, localized=not cmd.nonlocalized)
    trace = [f"n={n}: {v}" for n, v in enumerate(res.values, start=1)]
    diags = [f"best at n={res.best_n}"]
    if not res.certified:
        diags.append("lower bound only; NOT CERTIFIED")
    return Report(str(res.best), res.certified, "oracle", trace, diags)


def _run_mult(cmd, P, c, g) -> Report:
    frame = _explicit_frame(cmd, P, c)
    if frame is None and not P.is_hypersurface and P.gens:
        raise SamuelError("multiplicity of a multi-generator presentation needs --base/--fiber")
    e = multiplicity(P, c, frame)
    route = "frame" if frame is not None and not P.is_hypersurface else "hypersurface"
    diags = ["frame only partially validated"] if frame is not None and frame.partial else []
    return Report(str(e), True, route, [], diags)


def _frame_lines(frame, c) -> list:
    rep = transversal_at_prime(frame, c.pvars)
    lines = [f"base: {','.join(frame.base_vars)}", f"fiber: {','.join(frame.fiber_vars)}"]
    lines += [f"change: {d}" for d in frame.change.describe()] or ["change: identity"]
    lines += ["matrix: [" + ", ".join(str(x) for x in row) + "]" for row in frame.change.matrix]
    for theta, chi in frame.charpolys.items():
        lines.append(f"charpoly {theta}: {charpoly_str(chi, frame.wvar)}")
        lines.append(f"coefficient orders {theta}: " + ", ".join(
            f"a{j}={o}" for j, o in enumerate(rep.coefficient_orders[theta], start=1)))
    lines.append(f"generic rank: {frame.generic_rank}")
    return lines


def _run_frame(cmd, P, c, g) -> Report:
    if cmd.base is not None or cmd.fiber is not None:
        if P.is_hypersurface and cmd.fiber and len(cmd.fiber) == 1:
            base = cmd.base or [v for v in P.ring.variables if v != cmd.fiber[0]]
            chk = check_transversal(P, base, cmd.fiber[0])
            if not chk.ok:
                orders = ", ".join(f"a{j}={o}" for j, o in enumerate(chk.coefficient_orders, start=1))
                return Report("not transversal", True, "explicit", [f"coefficient orders: {orders}"],
                              [chk.reason, f"degree {chk.degree} in the fiber, order {chk.order}"])
        frame = _explicit_frame(cmd, P, c)
        route = "explicit"
    else:
        if not P.is_hypersurface:
            raise SamuelError("automatic frame search needs a hypersurface; supply --base/--fiber")
        frame = find_transversal_frame(P, c)
        route = "search"
    diags = ["frame only partially validated: reducedness and dimension are user-asserted"] if frame.partial else []
    return Report("transversal", True, route, _frame_lines(frame, c), diags)


def _run_slope(cmd, P, c, g) -> Report:
    rep = samuel_slope(P, c, _explicit_frame(cmd, P, c))
    diags = [f"extremal: {'yes' if rep.extremal else 'no'}", f"excess: {rep.excess}",
             f"embedding dimension: {rep.embedding_dim}", f"multiplicity: {rep.multiplicity}"]
    diags += [f"witness: {w}" for w in rep.witnesses]
    diags += list(rep.diagnostics)
    trace = rep.trace_lines() if cmd.trace else []
    return Report(str(rep.slope), True, "frame" if rep.per_generator else "regular", trace, diags)


def _run_probe(cmd, P, c, g) -> Report:
    if not cmd.prime:
        raise SamuelError("probe needs --prime")
    samples = [parse_point(a) for a in cmd.at] or [{}]
    rep = semicontinuity_probe(P, cmd.prime, samples)
    trace = []
    for e in rep.entries:
        where = ",".join(f"{k}={v}" for k, v in e.point.items()) or "origin"
        if e.skipped:
            trace.append(f"{where}: skipped ({e.note})")
        else:
            rel = "<=" if e.holds else ">"
            trace.append(f"{where}: {rep.prime_slope} {rel} {e.slope}")
    diags = [f"violation at {e.point}" for e in rep.violations]
    return Report(str(rep.prime_slope), True, "probe", trace, diags)


def _run_corpus(cmd) -> Report:
    from .corpus import run_corpus

    results = run_corpus()
    passed = sum(r.passed for r in results)
    trace = [r.line() for r in results]
    route = "corpus"
    rep = Report(f"{passed}/{len(results)}", passed == len(results), route, trace,
                 [f"failed: {r.name}" for r in results if not r.passed])
    return rep


_DISPATCH = {
    "order": _run_order, "oracle": _run_oracle, "mult": _run_mult,
    "frame": _run_frame, "slope": _run_slope, "probe": _run_probe,
}


def run_command(cmd: Command) -> Report:
    """Execute a command; library errors become an error report."""
    try:
        if cmd.verb == "corpus":
            rep = _run_corpus(cmd)
            if not rep.certified:
                rep.route = "error"
            return rep
        if cmd.verb not in _DISPATCH:
            raise SamuelError(f"unknown verb {cmd.verb!r}")
        P, c, g = _prepare(cmd)
        return _DISPATCH[cmd.verb](cmd, P, c, g)
    except (SamuelError, ArithmeticError, ValueError) as exc:
        return Report("", False, "error", [], [f"{type(exc).__name__}: {exc}"])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="samuel", description="Asymptotic Samuel function and Samuel slope of local rings")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("ringfile", nargs="?")
    ap.add_argument("--elem")
    ap.add_argument("--prime", help="comma-separated variables generating a monomial prime")
    ap.add_argument("--at", action="append", default=[], help="point v1=c1,...; repeatable for probe")
    ap.add_argument("--base")
    ap.add_argument("--fiber")
    ap.add_argument("--search", action="store_true")
    ap.add_argument("--strategy", choices=("auto", "hickel", "oracle"), default="auto")
    ap.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    ap.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP)
    ap.add_argument("--nonlocalized", action="store_true")
    ap.add_argument("--trace", action="store_true")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    cmd = Command(args.verb, elem=args.elem, prime=_var_list(args.prime), at=args.at,
                  base=_var_list(args.base), fiber=_var_list(args.fiber), search=args.search,
                  strategy=args.strategy, nmax=args.nmax, cap=args.cap,
                  nonlocalized=args.nonlocalized, trace=args.trace)
    if args.verb != "corpus":
        if not args.ringfile:
            print("error: a ring file is required", file=sys.stderr)
            return 1
        try:
            with open(args.ringfile, encoding="utf-8") as fh:
                cmd.ring_text = fh.read()
        except OSError as exc:
            rep = Report("", False, "error", [], [f"cannot read {args.ringfile}: {exc.strerror}"])
            print(rep.to_json() if args.format == "json" else rep.to_text())
            return 1
    rep = run_command(cmd)
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
