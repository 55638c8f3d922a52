"""Built-in example corpus with expected values.

Tags: ``reference`` values are published results for these rings;
``derived`` values were worked out by hand or by an independent computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cli import Command, run_command

CUSP = "field Q\nvars x y\nideal x^2 - y^3\n"
XY_Z3 = "field Q\nvars x y z\nideal x*y - z^3\n"
Y2_ZX3 = "field Q\nvars x y z\nideal y^2 + z*x^3\n"
CHAR2 = "field F 2\nvars x y\nideal x^2 + y^4 + y^5\n"
REGULAR = "field Q\nvars x y z\nideal z - x*y\n"
NON_REDUCED = "field F 2\nvars x y\nideal x^2 + y^4\n"
NO_RATIONAL_DIRECTION = "field F 2\nvars x y\nideal x^2*y + x*y^2\n"


def whitney(p: int) -> str:
    return f"field F {p}\nvars x y1 y2\nideal x^{p} - y1^{p}*y2\n"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    tag: str
    command: Command
    expected: str
    expect_certified: bool = True


@dataclass(frozen=True)
class CorpusResult:
    name: str
    tag: str
    expected: str
    got: str
    certified: bool
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} [{self.tag}] expected {self.expected} got {self.got}"


def _e(name, tag, verb, ring, expected, certified=True, **kw) -> CorpusEntry:
    return CorpusEntry(name, tag, Command(verb, ring_text=ring, **kw), expected, certified)


def entries() -> list:
    out = [
        _e("cusp naive order of x", "reference", "oracle", CUSP, "1", False, elem="x", nmax=1),
        _e("cusp naive order of x^2", "reference", "oracle", CUSP, "3", False, elem="x^2", nmax=1),
        _e("cusp asymptotic order of x", "reference", "order", CUSP, "3/2", elem="x"),
        _e("cusp oracle for x at n=2", "reference", "oracle", CUSP, "3/2", False, elem="x", nmax=2),
        _e("xy-z^3 order of x", "reference", "order", XY_Z3, "1", elem="x"),
        _e("xy-z^3 order of y", "reference", "order", XY_Z3, "1", elem="y"),
        _e("xy-z^3 order of z", "reference", "order", XY_Z3, "1", elem="z"),
        _e("xy-z^3 order of xy", "reference", "order", XY_Z3, "3", elem="x*y"),
        _e("xy-z^3 order of xz", "reference", "order", XY_Z3, "2", elem="x*z"),
        _e("xy-z^3 order of yz", "reference", "order", XY_Z3, "2", elem="y*z"),
        _e("xy-z^3 base {x,y} with fiber z", "reference", "frame", XY_Z3, "not transversal",
           base=["x", "y"], fiber=["z"]),
        _e("xy-z^3 slope", "derived", "slope", XY_Z3, "1"),
        _e("xy-z^3 multiplicity", "derived", "mult", XY_Z3, "2"),
        _e("y^2+zx^3 order of z at the origin", "reference", "order", Y2_ZX3, "1", elem="z"),
        _e("y^2+zx^3 order of z localized at <y,z>", "reference", "order", Y2_ZX3, "2", elem="z",
           prime=["y", "z"]),
        _e("y^2+zx^3 order of z along <y,z> unlocalized", "reference", "order", Y2_ZX3, "1", elem="z",
           prime=["y", "z"], nonlocalized=True),
        _e("y^2+zx^3 multiplicity at <y,z>", "derived", "mult", Y2_ZX3, "1", prime=["y", "z"]),
        _e("y^2+zx^3 multiplicity at the origin", "derived", "mult", Y2_ZX3, "2"),
        _e("char 2 order of x", "reference", "order", CHAR2, "2", elem="x"),
        _e("char 2 order of x+y^2", "reference", "order", CHAR2, "5/2", elem="x+y^2"),
        _e("char 2 slope", "reference", "slope", CHAR2, "5/2"),
        _e("regular ring slope", "derived", "slope", REGULAR, "inf"),
        _e("char 2 square rejected", "derived", "order", NON_REDUCED, "error", False, elem="x"),
        _e("char 2 rational directions exhausted", "derived", "frame", NO_RATIONAL_DIRECTION, "error", False),
    ]
    for p in (2, 3, 5):
        W = whitney(p)
        top = f"{p + 1}/{p}"
        out += [
            _e(f"whitney p={p} multiplicity at <x,y1>", "reference", "mult", W, str(p), prime=["x", "y1"]),
            _e(f"whitney p={p} slope at <x,y1>", "reference", "slope", W, "1", prime=["x", "y1"]),
            _e(f"whitney p={p} order of x at <x,y1>", "reference", "order", W, "1", elem="x", prime=["x", "y1"]),
            _e(f"whitney p={p} slope at the origin", "reference", "slope", W, top),
        ]
        for c in sorted({1, 2 % p}):
            if c:
                out.append(_e(f"whitney p={p} slope at y2={c}", "reference", "slope", W, top, at=[f"y2={c}"]))
        out.append(_e(f"whitney p={p} semicontinuity probe", "reference", "probe", W, "1", prime=["x", "y1"],
                      at=[f"y2={c}" for c in range(p)]))
    return out


def run_entry(entry: CorpusEntry) -> CorpusResult:
    rep = run_command(entry.command)
    if entry.expected == "error":
        ok = rep.route == "error"
        return CorpusResult(entry.name, entry.tag, entry.expected, rep.value or "error", rep.certified, ok)
    ok = rep.value == entry.expected and rep.route != "error"
    if entry.expect_certified:
        ok = ok and rep.certified
    if entry.command.verb == "probe":
        ok = ok and not rep.diagnostics
    return CorpusResult(entry.name, entry.tag, entry.expected, rep.value or "error", rep.certified, ok)


def run_corpus() -> list:
    return [run_entry(e) for e in entries()]
