"""Quantifier-free formulas in one variable and their exact realizations.

Atoms are ``P op 0`` with ``op`` in ``> < >= <= =``; formulas combine atoms
with ``and``/``or``.  A formula is *closed* in shape when it is a disjunction
of conjunctions of weak atoms (``>=``, ``<=``, ``=``).

Realizations are finite unions of points and intervals with algebraic
endpoints, kept as their connected components so that two realizations are
equal exactly when their component lists agree.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

from .realroots import ThomEncoding, rational_between, sorted_roots
from .upoly import UPoly

STRICT = {">", "<"}
WEAK = {">=", "<=", "="}
_FLIP = {">": "<", "<": ">", ">=": "<=", "<=": ">=", "=": "="}


def _ok(sign: int, op: str) -> bool:
    return {"=": sign == 0, ">": sign > 0, "<": sign < 0, ">=": sign >= 0, "<=": sign <= 0}[op]


class NotClosed(ValueError):
    """The realization of a formula is not a closed subset of the line."""

    def __init__(self, theta, witness):
        self.theta = theta
        self.witness = witness
        w = witness.approx(10) if isinstance(witness, ThomEncoding) else str(witness)
        super().__init__(f"realization of {theta} misses its boundary point {w}")


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    poly: UPoly
    op: str

    def __post_init__(self):
        if self.op == "==":
            object.__setattr__(self, "op", "=")
        if self.op not in _FLIP:
            raise ValueError(f"unknown relation {self.op!r}")

    def holds(self, sign: Callable[[UPoly], int]) -> bool:
        return _ok(sign(self.poly), self.op)

    def atoms(self) -> list["Atom"]:
        return [self]

    def to_text(self, var: str = "X") -> str:
        return f"{self.poly.to_text(var)} {self.op} 0"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class And:
    parts: tuple

    def holds(self, sign) -> bool:
        return all(p.holds(sign) for p in self.parts)

    def atoms(self) -> list[Atom]:
        return [a for p in self.parts for a in p.atoms()]

    def to_text(self, var: str = "X") -> str:
        if not self.parts:
            return "0 = 0"
        return " and ".join(p.to_text(var) if isinstance(p, Atom) else f"({p.to_text(var)})" for p in self.parts)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Or:
    parts: tuple

    def holds(self, sign) -> bool:
        return any(p.holds(sign) for p in self.parts)

    def atoms(self) -> list[Atom]:
        return [a for p in self.parts for a in p.atoms()]

    def to_text(self, var: str = "X") -> str:
        if not self.parts:
            return "1 = 0"
        out = []
        for p in self.parts:
            t = p.to_text(var)
            out.append(f"({t})" if isinstance(p, Or) or (isinstance(p, And) and len(p.parts) > 1) else t)
        return " or ".join(out)

    def __str__(self) -> str:
        return self.to_text()


Formula = Atom | And | Or
TRUE = And(())
FALSE = Or(())


def conj(*parts) -> And:
    return And(tuple(parts))


def disj(*parts) -> Or:
    return Or(tuple(parts))


def polynomials(f: Formula) -> list[UPoly]:
    """Distinct polynomials of the atoms, in first-seen order."""
    return list(dict.fromkeys(a.poly for a in f.atoms()))


def dnf(f: Formula) -> list[list[Atom]]:
    """Clauses of an equivalent disjunctive normal form."""
    if isinstance(f, Atom):
        return [[f]]
    if isinstance(f, Or):
        return [c for p in f.parts for c in dnf(p)]
    out = [[]]
    for p in f.parts:
        out = [a + b for a in out for b in dnf(p)]
    return out


def from_dnf(clauses: Iterable[Sequence[Atom]]) -> Or:
    return Or(tuple(And(tuple(c)) for c in clauses))


def is_closed_shape(f: Formula) -> bool:
    """DNF built from weak atoms only (no strict inequalities)."""
    if isinstance(f, Atom):
        return f.op in WEAK
    if isinstance(f, And):
        return all(isinstance(p, Atom) and p.op in WEAK for p in f.parts)
    return all(isinstance(p, (Atom, And)) and is_closed_shape(p) for p in f.parts)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_]\w*)|(>=|<=|==|\*\*|[-+*/^()<>=]))")


class FormulaSyntaxError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, var: str | None):
        self.toks: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise FormulaSyntaxError(f"unexpected input at {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", num))
            elif name is not None:
                low = name.lower()
                self.toks.append(("kw", low) if low in ("and", "or") else ("var", name))
            else:
                self.toks.append(("op", op))
            pos = m.end()
        self.i = 0
        self.var = var

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "")

    def take(self, kind, value=None):
        t = self.peek()
        if t[0] != kind or (value is not None and t[1] != value):
            raise FormulaSyntaxError(f"expected {value or kind}, found {t[1] or 'end of input'!r}")
        self.i += 1
        return t

    # formula level
    def formula(self):
        parts = [self.conj()]
        while self.peek() == ("kw", "or"):
            self.i += 1
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self):
        parts = [self.unit()]
        while self.peek() == ("kw", "and"):
            self.i += 1
            parts.append(self.unit())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unit(self):
        start = self.i
        try:
            return self.atom()
        except FormulaSyntaxError:
            if self.toks[start:start + 1] != [("op", "(")]:
                raise
            self.i = start + 1
            f = self.formula()
            self.take("op", ")")
            return f

    def atom(self):
        lhs = self.expr()
        t = self.peek()
        if t[0] != "op" or t[1] not in ("<", ">", "<=", ">=", "=", "=="):
            raise FormulaSyntaxError(f"expected a relation, found {t[1] or 'end of input'!r}")
        self.i += 1
        rhs = self.expr()
        return Atom(lhs - rhs, t[1])

    # polynomial level
    def expr(self) -> UPoly:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take("op")[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> UPoly:
        acc = self.unary()
        while True:
            t = self.peek()
            if t in (("op", "*"), ("op", "/")):
                self.i += 1
                rhs = self.unary()
                if t[1] == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        raise FormulaSyntaxError("division only by nonzero constants")
                    acc = acc.scale(1 / rhs.coeffs[0])
            elif t[0] in ("var", "num") or t == ("op", "("):
                acc = acc * self.unary()  # implicit product, e.g. 2X or (X-1)(X+1)
            else:
                return acc

    def unary(self) -> UPoly:
        if self.peek() == ("op", "-"):
            self.i += 1
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> UPoly:
        base = self.primary()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.i += 1
            e = self.take("num")[1]
            if not e.isdigit():
                raise FormulaSyntaxError(f"exponent must be a nonnegative integer, not {e}")
            base = base ** int(e)
        return base

    def primary(self) -> UPoly:
        kind, val = self.peek()
        if kind == "num":
            self.i += 1
            return UPoly.constant(Fraction(val))
        if kind == "var":
            self.i += 1
            if self.var is None:
                self.var = val
            elif val != self.var:
                raise FormulaSyntaxError(f"second variable {val!r} (formula is in {self.var!r})")
            return UPoly.monomial(1)
        if (kind, val) == ("op", "("):
            self.i += 1
            e = self.expr()
            self.take("op", ")")
            return e
        raise FormulaSyntaxError(f"unexpected {val or 'end of input'!r}")


def parse_formula(text: str, var: str | None = None) -> Formula:
    """Parse e.g. ``"1 - X^2 >= 0 or (X - 3)*(X - 4) <= 0"``."""
    p = _Parser(text, var)
    f = p.formula()
    if p.peek()[0] != "eof":
        raise FormulaSyntaxError(f"trailing input starting at {p.peek()[1]!r}")
    return f


def parse_polynomial(text: str, var: str | None = None) -> UPoly:
    p = _Parser(text, var)
    e = p.expr()
    if p.peek()[0] != "eof":
        raise FormulaSyntaxError(f"trailing input starting at {p.peek()[1]!r}")
    return e


# ---------------------------------------------------------------------------
# Realizations
# ---------------------------------------------------------------------------

NEG_INF, POS_INF = -math.inf, math.inf


def _cmp(a, b) -> int:
    if a == b:
        return 0
    return -1 if a < b else 1


def sorted_points(points: Iterable) -> list:
    """Sort algebraic/rational numbers and drop duplicates."""
    pts = sorted(points, key=cmp_to_key(_cmp))
    out = []
    for x in pts:
        if not out or not out[-1] == x:
            out.append(x)
    return out


@dataclass
class Piece:
    """A connected component: ``lo``..``hi`` with closedness flags (a point has ``lo == hi``)."""

    lo: object
    hi: object
    lo_closed: bool
    hi_closed: bool

    @property
    def is_point(self) -> bool:
        return self.lo_closed and self.hi_closed and self.lo == self.hi

    def __eq__(self, other) -> bool:
        if not isinstance(other, Piece):
            return NotImplemented
        return (self.lo_closed == other.lo_closed and self.hi_closed == other.hi_closed
                and self.lo == other.lo and self.hi == other.hi)

    def contains(self, x) -> bool:
        if x < self.lo or self.hi < x:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def __repr__(self) -> str:
        def t(v):
            if isinstance(v, ThomEncoding):
                return v.approx(8)
            return str(v)

        if self.is_point:
            return "{" + t(self.lo) + "}"
        return ("[" if self.lo_closed else "(") + f"{t(self.lo)}, {t(self.hi)}" + ("]" if self.hi_closed else ")")


class Realization:
    """A finite union of points and intervals, stored as sorted connected components."""

    def __init__(self, pieces: Iterable[Piece] = ()):
        self.pieces = list(pieces)

    @classmethod
    def from_test(cls, breakpoints: Iterable, test: Callable[[object], bool]) -> "Realization":
        """Cells cut out by ``breakpoints``; ``test`` decides each point and a rational sample per open cell."""
        pts = sorted_points(breakpoints)
        cells = []  # (lo, hi, is_point, truth)
        bounds = [NEG_INF] + pts + [POS_INF]
        for k in range(len(bounds) - 1):
            a, b = bounds[k], bounds[k + 1]
            cells.append((a, b, False, test(rational_between(a, b))))
            if k < len(pts):
                cells.append((b, b, True, test(b)))
        pieces = []
        run = None
        for lo, hi, is_pt, truth in cells:
            if truth:
                if run is None:
                    run = Piece(lo, hi, is_pt, is_pt)
                else:
                    run.hi, run.hi_closed = hi, is_pt
            elif run is not None:
                pieces.append(run)
                run = None
        if run is not None:
            pieces.append(run)
        return cls(pieces)

    @classmethod
    def interval(cls, lo, hi) -> "Realization":
        return cls([Piece(lo, hi, lo != NEG_INF, hi != POS_INF)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Realization):
            return NotImplemented
        return len(self.pieces) == len(other.pieces) and all(a == b for a, b in zip(self.pieces, other.pieces))

    def __repr__(self) -> str:
        return "Realization(" + " u ".join(map(repr, self.pieces)) + ")" if self.pieces else "Realization(empty)"

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def is_empty(self) -> bool:
        return not self.pieces

    def endpoints(self) -> list:
        return sorted_points(x for p in self.pieces for x in (p.lo, p.hi) if x not in (NEG_INF, POS_INF))

    def contains(self, x) -> bool:
        return any(p.contains(x) for p in self.pieces)

    def is_bounded(self) -> bool:
        return all(p.lo != NEG_INF and p.hi != POS_INF for p in self.pieces)

    def missing_endpoint(self):
        """A finite endpoint not contained in the set, or None when the set is closed."""
        for p in self.pieces:
            if p.lo != NEG_INF and not p.lo_closed:
                return p.lo
            if p.hi != POS_INF and not p.hi_closed:
                return p.hi
        return None

    def is_closed(self) -> bool:
        return self.missing_endpoint() is None

    def intersect(self, other: "Realization") -> "Realization":
        return Realization.from_test(self.endpoints() + other.endpoints(),
                                     lambda x: self.contains(x) and other.contains(x))

    def union(self, other: "Realization") -> "Realization":
        return Realization.from_test(self.endpoints() + other.endpoints(),
                                     lambda x: self.contains(x) or other.contains(x))


def _sign(g: UPoly, x) -> int:
    if isinstance(x, ThomEncoding):
        return x.sign_of(g)
    return g.sign_at(x)


def roots_of(polys: Iterable[UPoly]) -> list[ThomEncoding]:
    """Sorted distinct real roots of the nonconstant polynomials."""
    return sorted_roots(polys)


def realization(f: Formula) -> Realization:
    """Exact realization of a one-variable formula."""
    return Realization.from_test(roots_of(polynomials(f)), lambda x: f.holds(lambda g: _sign(g, x)))


# ---------------------------------------------------------------------------
# Closing
# ---------------------------------------------------------------------------

def derivative_closure(polys: Iterable[UPoly]) -> list[UPoly]:
    """All nonconstant derivatives of the given polynomials, deduplicated, in a stable order."""
    out = []
    for p in polys:
        for d in p.derivatives():
            if d.degree > 0 and d not in out:
                out.append(d)
    return out


def _sign_conditions(family: Sequence[UPoly]) -> list[tuple[int, ...]]:
    """Realizable sign conditions of ``family`` on the line, in order of appearance."""
    seen = []
    for x in _cell_points(family):
        sig = tuple(_sign(g, x) for g in family)
        if sig not in seen:
            seen.append(sig)
    return seen


def _cell_points(family: Sequence[UPoly]) -> list:
    roots = roots_of(family)
    bounds = [NEG_INF] + roots + [POS_INF]
    pts = []
    for k in range(len(bounds) - 1):
        pts.append(rational_between(bounds[k], bounds[k + 1]))
        if k < len(roots):
            pts.append(roots[k])
    return pts


def _relaxed(family: Sequence[UPoly], sig: Sequence[int]) -> And:
    ops = {1: ">=", -1: "<=", 0: "="}
    return And(tuple(Atom(g, ops[s]) for g, s in zip(family, sig)))


def make_closed(theta: Formula) -> Or:
    """A closed-shape formula with the same realization as ``theta``.

    ``theta`` must have a closed realization, otherwise :class:`NotClosed`
    is raised with a boundary point the set misses.  For each DNF clause the
    derivative-closed family of its polynomials is formed; every realizable
    sign condition of that family satisfying the clause is replaced by its
    relaxation (strict signs become weak ones).  The relaxed realization of a
    realizable sign condition on a derivative-closed family is the closure of
    its realization, so the disjunction realizes the closure of ``theta``.
    """
    R = realization(theta)
    miss = R.missing_endpoint()
    if miss is not None:
        raise NotClosed(theta, miss)
    clauses = []
    for clause in dnf(theta):
        family = derivative_closure(a.poly for a in clause)
        consts = [a for a in clause if a.poly.degree <= 0]
        if not all(a.holds(lambda g: g.sign_at(0)) for a in consts):
            continue  # a false constant atom kills the clause
        atoms = [a for a in clause if a.poly.degree > 0]
        for sig in _sign_conditions(family):
            val = dict(zip(family, sig))
            if all(_ok(val[a.poly], a.op) for a in atoms):
                c = _relaxed(family, sig)
                if c not in clauses:
                    clauses.append(c)
    return Or(tuple(clauses))


def naive_weakening(theta: Formula) -> Formula:
    """Replace every strict atom by its weak version (generally *not* equivalent)."""
    if isinstance(theta, Atom):
        return Atom(theta.poly, {">": ">=", "<": "<="}.get(theta.op, theta.op))
    return type(theta)(tuple(naive_weakening(p) for p in theta.parts))
