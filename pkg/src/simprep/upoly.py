"""Dense univariate polynomials over the rationals.

Coefficients are stored low degree first as :class:`fractions.Fraction`.
Everything here is exact; no floating point is used except in ``__float__``
style helpers meant for display.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class ZeroPolynomial(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class UPoly:
    """Immutable dense polynomial in one variable.

    >>> p = UPoly([-2, 0, 1])     # T^2 - 2
    >>> p(3)
    Fraction(7, 1)
    """

    __slots__ = ("coeffs", "_hash", "_ints")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None
        self._ints = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "UPoly":
        return cls([c])

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "UPoly":
        return cls([0] * e + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "UPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    T: "UPoly"  # set below

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("UPoly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"UPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "UPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        out = UPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other) -> tuple["UPoly", "UPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lc = other.degree, other.lc
        if len(r) - 1 < db:
            return UPoly(), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return UPoly(q), UPoly(r[:db])

    def __floordiv__(self, other) -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UPoly":
        return divmod(self, other)[1]

    def scale(self, c: Number) -> "UPoly":
        c = _frac(c)
        return UPoly(x * c for x in self.coeffs)

    # -- calculus and evaluation ---------------------------------------------
    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def derivatives(self) -> list["UPoly"]:
        """The tuple ``(f, f', ..., f^(deg f))``; empty for the zero polynomial."""
        out = []
        p = self
        while not p.is_zero():
            out.append(p)
            p = p.derivative()
        return out

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UPoly) else UPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q: "UPoly") -> "UPoly":
        return self(q)

    def sign_at(self, x: Number) -> int:
        if not self.coeffs:
            return 0
        x = _frac(x)
        p, q = x.numerator, x.denominator
        c = self.int_coeffs()
        # q^n f(p/q) up to a positive factor, by integer Horner
        acc, qk = c[-1], 1
        for ci in reversed(c[:-1]):
            qk *= q
            acc = acc * p + ci * qk
        s = (acc > 0) - (acc < 0)
        return s if self.coeffs[-1] > 0 else -s

    # -- normal forms ---------------------------------------------------------
    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def primitive(self) -> "UPoly":
        """Integer-coefficient primitive associate with positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = abs(reduce(gcd, ints))
        if ints[-1] < 0:
            g = -g
        return UPoly(Fraction(c // g) for c in ints)

    def int_coeffs(self) -> list[int]:
        """Coefficients of the primitive associate as Python ints."""
        if self._ints is None:
            self._ints = [int(c) for c in self.primitive().coeffs]
        return list(self._ints)

    def squarefree(self) -> "UPoly":
        """Square-free part ``f / gcd(f, f')`` (primitive)."""
        if self.is_zero():
            raise ZeroPolynomial("square-free part of the zero polynomial")
        if self.degree <= 0:
            return UPoly([1])
        g = poly_gcd(self, self.derivative())
        return (self // g).primitive()

    def squarefree_decomposition(self) -> list[tuple["UPoly", int]]:
        """Yun's algorithm: pairs ``(a_k, k)`` with ``f = c * prod a_k^k``."""
        if self.is_zero():
            raise ZeroPolynomial("square-free decomposition of the zero polynomial")
        out = []
        f = self.monic()
        if f.degree <= 0:
            return out
        fp = f.derivative()
        a = poly_gcd(f, fp)
        b = f // a
        c = fp // a
        d = c - b.derivative()
        k = 1
        while b.degree > 0:
            a_k = poly_gcd(b, d)
            if a_k.degree > 0:
                out.append((a_k.primitive(), k))
            b = b // a_k
            c = d // a_k
            d = c - b.derivative()
            k += 1
        return out

    # -- text ---------------------------------------------------------------
    def to_text(self, var: str = "T") -> str:
        """Sparse ``c*T^e`` text; parsed back by :func:`parse_upoly`."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mon = var if e == 1 else f"{var}^{e}"
                body = mon if a == 1 else f"{a}*{mon}"
            parts.append((sign, body))
        s0, b0 = parts[0]
        text = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text


def _coerce(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    return UPoly([x])


UPoly.T = UPoly([0, 1])


def _prem_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of the pseudo-remainder of ``a`` by ``b`` (integer lists, low degree first)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, bj in enumerate(b):
            r[shift + j] -= c * bj
        while r and r[-1] == 0:
            r.pop()
    if not r:
        return r
    g = reduce(gcd, r)
    return [x // g for x in r]


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    if b.is_zero():
        return a.monic()
    if a.is_zero():
        return b.monic()
    x, y = a.int_coeffs(), b.int_coeffs()
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _prem_primitive(x, y)
    return UPoly(x).monic()


def poly_lcm_many(polys: Sequence[UPoly]) -> UPoly:
    out = UPoly([1])
    for p in polys:
        out = (out * p) // poly_gcd(out, p)
    return out.monic()


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?|\d*\.\d+)\s*(?:\*\s*)?)?
        (?:(?P<var>[A-Za-z_]\w*)(?:\s*(?:\^|\*\*)\s*(?P<exp>\d+))?)?
        \s*""",
    re.VERBOSE,
)


def parse_upoly(text: str, var: str | None = None) -> UPoly:
    """Parse sparse sums such as ``"3/2*T^2 - T + 1"``.

    Only a single variable name may appear; pass ``var`` to insist on one.
    Products of polynomials and parentheses are handled by
    :mod:`simprep.formula`, not here.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    seen_var = var
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and m.group("sign") is None:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = 0
        if m.group("var"):
            name = m.group("var")
            if seen_var is None:
                seen_var = name
            elif name != seen_var:
                raise ValueError(f"unexpected variable {name!r} (expected {seen_var!r})")
            e = int(m.group("exp") or 1)
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
        pos = m.end()
    n = max(coeffs) + 1
    return UPoly(coeffs.get(i, 0) for i in range(n))
