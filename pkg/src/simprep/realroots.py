"""Real algebraic numbers in one variable.

Roots are isolated with Descartes' rule of signs on the square-free part and
represented by :class:`ThomEncoding`, which pairs a polynomial with the sign
vector of its derivatives at the root.  Sturm sequences are kept as an
independent root counter.

The module also provides resultants over ``Q[Y]`` (used to express ``P(x)``
for algebraic ``x``) and the removal of infinitesimals from polynomials with
coefficients in ``Q[eps_1, ..., eps_n]``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key, total_ordering
from typing import Iterable, Mapping, Sequence

from .upoly import UPoly, ZeroPolynomial, poly_gcd

__all__ = [
    "ThomEncoding",
    "ZeroPolynomial",
    "ZeroPolynomialInInput",
    "EpsPolynomial",
    "isolate_roots",
    "root_multiplicities",
    "thom_encode",
    "sign_at",
    "compare",
    "sturm_sequence",
    "sturm_count",
    "resultant",
    "value_at",
    "remove_infinitesimals",
    "rational_between",
]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Descartes isolation
# ---------------------------------------------------------------------------

def _descartes_count(f: UPoly, a: Fraction, b: Fraction) -> int:
    """Sign variations bounding the number of roots of ``f`` in ``(a, b)``."""
    # D^n f((A + W x) / D) has the roots of f in (a, b) inside (0, 1); all integer
    c = f.int_coeffs()
    n = len(c) - 1
    a, w = Fraction(a), Fraction(b) - Fraction(a)
    D = math.lcm(a.denominator, w.denominator)
    A, W = int(a * D), int(w * D)
    e = [ck * D ** (n - k) for k, ck in enumerate(c)]
    for i in range(n):
        for k in range(n - 1, i - 1, -1):
            e[k] += A * e[k + 1]
    g = [ek * W ** k for k, ek in enumerate(e)]
    g.reverse()
    for i in range(n):
        for k in range(n - 1, i - 1, -1):
            g[k] += g[k + 1]
    var, last = 0, 0
    for x in g:
        sg = _sign(x)
        if sg:
            if last and sg != last:
                var += 1
            last = sg
    return var


def _cauchy_bound(f: UPoly) -> Fraction:
    lc = abs(f.lc)
    m = max((abs(c) for c in f.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lc


_DIVISOR_LIMIT = 10**10


def _divisors(n: int) -> list[int] | None:
    n = abs(n)
    if n > _DIVISOR_LIMIT:
        return None
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


_CANDIDATE_LIMIT = 20000


def _is_root(c: Sequence[int], p: int, q: int) -> bool:
    """Whether ``p/q`` is a root, via ``sum c_i p^i q^(n-i) == 0`` in integers."""
    n = len(c) - 1
    total, pi, qi = 0, 1, q**n
    for ci in c:
        total += ci * pi * qi
        pi *= p
        qi //= q
    return total == 0


def _rational_roots(f: UPoly) -> list[Fraction]:
    """Rational roots of ``f`` by the rational root test (skipped for huge coefficients)."""
    c = f.int_coeffs()
    out = []
    while c and c[0] == 0:
        out.append(Fraction(0))
        c = c[1:]
    if len(c) <= 1:
        return out
    ps, qs = _divisors(c[0]), _divisors(c[-1])
    if ps is None or qs is None or len(ps) * len(qs) > _CANDIDATE_LIMIT:
        return out
    f1 = sum(c)
    fm1 = sum(ci if i % 2 == 0 else -ci for i, ci in enumerate(c))
    for p in ps:
        for q in qs:
            if math.gcd(p, q) != 1:
                continue
            for pp in (p, -p):
                # necessary: (p - q) | f(1) and (p + q) | f(-1)
                if pp != q and f1 % (pp - q):
                    continue
                if pp != -q and fm1 % (pp + q):
                    continue
                if _is_root(c, pp, q):
                    out.append(Fraction(pp, q))
    return out


def _isolate_squarefree(f: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for a square-free ``f``; ``(r, r)`` marks an exact root."""
    if f.degree <= 0:
        return []
    exact = _rational_roots(f)
    if exact:
        rest = f // UPoly.from_roots(exact)
        out = [(r, r) for r in exact]
        for a, b in _isolate_squarefree_irrational(rest):
            # keep the rational roots of f out of the other isolating intervals
            while a != b and any(a <= r <= b for r in exact):
                m = (a + b) / 2
                sm = rest.sign_at(m)
                if sm == 0:
                    a = b = m
                elif sm == rest.sign_at(a):
                    a = m
                else:
                    b = m
            out.append((a, b))
        out.sort(key=lambda iv: iv[0])
        return out
    return _isolate_squarefree_irrational(f)


def _isolate_squarefree_irrational(f: UPoly) -> list[tuple[Fraction, Fraction]]:
    if f.degree <= 0:
        return []
    B = Fraction(math.ceil(_cauchy_bound(f)))
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        v = _descartes_count(f, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if f(m) == 0:
            out.append((m, m))
        stack.append((a, m))
        stack.append((m, b))
    out = [_clear_endpoints(f, a, b) for a, b in out]
    out.sort(key=lambda iv: iv[0])
    return out


def _clear_endpoints(f: UPoly, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    # refinement relies on f being nonzero at both ends of an open interval
    while a != b and (f(a) == 0 or f(b) == 0):
        m = (a + b) / 2
        if f(m) == 0:
            return m, m
        if _descartes_count(f, a, m):
            b = m
        else:
            a = m
    return a, b


def isolate_roots(f: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root, in increasing order.

    An interval ``(lo, hi)`` with ``lo < hi`` contains its root in the open
    interior; ``lo == hi`` means the root is exactly that rational.
    Multiplicities are available from :func:`root_multiplicities`.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    return _isolate_squarefree(f.squarefree())


def root_multiplicities(f: UPoly) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """Isolating intervals (as in :func:`isolate_roots`) paired with multiplicities."""
    if f.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    parts = f.squarefree_decomposition()
    out = []
    for x in thom_encode(f):
        k = next(k for part, k in parts if x.sign_of(part) == 0)
        out.append((x.interval, k))
    return out


# ---------------------------------------------------------------------------
# Sturm sequences (independent counter)
# ---------------------------------------------------------------------------

def sturm_sequence(f: UPoly) -> list[UPoly]:
    if f.is_zero():
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(signs: Iterable[int]) -> int:
    var, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                var += 1
            last = s
    return var


def _sign_at_infinity(p: UPoly, positive: bool) -> int:
    s = _sign(p.lc)
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def sturm_count(f: UPoly, a=-math.inf, b=math.inf) -> int:
    """Number of distinct real roots of ``f`` in ``(a, b]``."""
    seq = sturm_sequence(f)

    def V(x):
        if x == -math.inf:
            return _variations(_sign_at_infinity(p, False) for p in seq)
        if x == math.inf:
            return _variations(_sign_at_infinity(p, True) for p in seq)
        x = Fraction(x)
        return _variations(p.sign_at(x) for p in seq)

    return V(a) - V(b)


# ---------------------------------------------------------------------------
# Thom encodings
# ---------------------------------------------------------------------------

def _interval_eval(p: UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


@total_ordering
class ThomEncoding:
    """A real algebraic number given by ``f`` and signs of ``Der(f)`` at the root.

    ``sigma[k]`` is the sign of the k-th derivative of ``f`` at the root, so
    ``sigma[0] == 0`` always.  An isolating interval is computed on demand and
    refined in place; it is a cache, not part of the value.

    Instances compare with each other, with ints/Fractions and with
    ``math.inf``/``-math.inf``.  Equality is numeric, so encodings with
    different polynomials can be equal; instances are therefore unhashable.
    """

    __slots__ = ("f", "_sigma", "_sf", "_lo", "_hi")

    def __init__(self, f: UPoly, sigma: Sequence[int]):
        if f.is_zero():
            raise ZeroPolynomial("Thom encoding of the zero polynomial")
        sigma = tuple(int(s) for s in sigma)
        if len(sigma) != f.degree + 1 or sigma[0] != 0:
            raise ValueError(f"sign vector {sigma} does not fit Der({f})")
        self.f = f
        self._sigma = sigma
        self._sf = f.squarefree()
        self._lo = self._hi = None
        for lo, hi in _isolate_squarefree(self._sf):
            cand = ThomEncoding._from_interval(f, self._sf, (lo, hi))
            if cand.sigma == sigma:
                self._lo, self._hi = cand._lo, cand._hi
                break
        else:
            raise ValueError(f"no real root of {f} realizes signs {sigma}")

    @classmethod
    def _from_interval(cls, f: UPoly, sf: UPoly, iv) -> "ThomEncoding":
        self = object.__new__(cls)
        self.f = f
        self._sf = sf
        self._lo, self._hi = iv
        self._sigma = None
        return self

    @property
    def sigma(self) -> tuple[int, ...]:
        """Signs of ``Der(f)`` at the root (computed on first use)."""
        if self._sigma is None:
            self._sigma = (0,) + tuple(self.sign_of(d) for d in self.f.derivatives()[1:])
        return self._sigma

    @classmethod
    def rational(cls, r) -> "ThomEncoding":
        r = Fraction(r)
        f = UPoly([-r, 1])
        return cls._from_interval(f, f.primitive(), (r, r))

    # -- interval cache -------------------------------------------------------
    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    @property
    def is_rational(self) -> bool:
        return self._lo == self._hi

    def refine(self) -> None:
        lo, hi = self._lo, self._hi
        if lo == hi:
            return
        m = (lo + hi) / 2
        s = self._sf.sign_at(m)
        if s == 0:
            self._lo = self._hi = m
        elif s == self._sf.sign_at(lo):
            self._lo = m
        else:
            self._hi = m

    def refine_to(self, width: Fraction) -> None:
        while self._hi - self._lo > width:
            self.refine()

    def __float__(self) -> float:
        self.refine_to(Fraction(1, 2**60))
        return float((self._lo + self._hi) / 2)

    def approx(self, digits: int = 12) -> str:
        return f"{float(self):.{digits}g}"

    # -- sign determination ---------------------------------------------------
    def sign_of(self, g: UPoly) -> int:
        """Sign of ``g`` at this root, computed exactly."""
        if g.is_zero():
            return 0
        lo, hi = self._lo, self._hi
        if lo == hi:
            return g.sign_at(lo)
        # most of the time a few bisections already push the roots of g out
        for _ in range(4):
            lo, hi = self._lo, self._hi
            if lo == hi:
                return g.sign_at(lo)
            if _descartes_count(g, lo, hi) == 0:
                return g.sign_at((lo + hi) / 2)
            self.refine()
        lo, hi = self._lo, self._hi
        if lo == hi:
            return g.sign_at(lo)
        h = poly_gcd(self._sf, g)
        if h.degree > 0 and h.sign_at(lo) * h.sign_at(hi) < 0:
            return 0
        # g does not vanish at the root: shrink until g has no root inside
        while True:
            lo, hi = self._lo, self._hi
            if lo == hi:
                return g.sign_at(lo)
            if _descartes_count(g, lo, hi) == 0:
                return g.sign_at((lo + hi) / 2)
            self.refine()

    # -- ordering -----------------------------------------------------------------
    def _cmp(self, other) -> int:
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        if isinstance(other, (int, Fraction)):
            return -self.sign_of(UPoly([Fraction(other), -1]))  # sign(x - r)
        if isinstance(other, float):
            return self._cmp(Fraction(other))
        if not isinstance(other, ThomEncoding):
            return NotImplemented
        return compare(self, other)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ThomEncoding({self.f.to_text()!r}, {list(self.sigma)}) ~ {self.approx(8)}"

    def to_json(self) -> dict:
        return {"poly": self.f.to_text(), "signs": list(self.sigma)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ThomEncoding":
        from .upoly import parse_upoly

        return cls(parse_upoly(obj["poly"]), obj["signs"])

    def copy(self) -> "ThomEncoding":
        new = object.__new__(ThomEncoding)
        new.f, new._sigma, new._sf, new._lo, new._hi = self.f, self._sigma, self._sf, self._lo, self._hi
        return new


def thom_encode(f: UPoly) -> list[ThomEncoding]:
    """One encoding per distinct real root of ``f``, in increasing order."""
    if f.is_zero():
        raise ZeroPolynomial("thom_encode of the zero polynomial")
    sf = f.squarefree()
    return [ThomEncoding._from_interval(f, sf, iv) for iv in _isolate_squarefree(sf)]


def sign_at(g: UPoly, x: ThomEncoding) -> int:
    return x.sign_of(g)


def _thom_order_same_poly(a: ThomEncoding, b: ThomEncoding) -> int:
    """Order two roots of one polynomial from their sign vectors alone."""
    sa, sb = a.sigma, b.sigma
    if sa == sb:
        return 0
    k = max(i for i in range(len(sa)) if sa[i] != sb[i])
    # derivative k+1 has a common nonzero sign at both roots
    s = sa[k + 1]
    return s if sa[k] > sb[k] else -s


def compare(a: ThomEncoding, b: ThomEncoding) -> int:
    """``-1``, ``0`` or ``1`` according to the order of the denoted reals."""
    if a is b:
        return 0
    if a._sf == b._sf:
        return _separate(a, b, distinct=False)
    if a.f == b.f:
        return _thom_order_same_poly(a, b)
    if a.is_rational:
        return b.sign_of(UPoly([a._lo, -1])) if not b.is_rational else _sign(a._lo - b._lo)
    if b.is_rational:
        return a.sign_of(UPoly([-b._lo, 1]))
    if a.sign_of(b._sf) == 0:
        # a is a root of b's square-free part; it is b iff it lies in b's interval
        if a.sign_of(UPoly([-b._lo, 1])) > 0 and a.sign_of(UPoly([-b._hi, 1])) < 0:
            return 0
    while True:
        if a._hi < b._lo or (a._hi == b._lo and not (a.is_rational and b.is_rational)):
            return -1
        if b._hi < a._lo or (b._hi == a._lo and not (a.is_rational and b.is_rational)):
            return 1
        if a.is_rational and b.is_rational:
            return _sign(a._lo - b._lo)
        if a._hi - a._lo >= b._hi - b._lo:
            a.refine()
        else:
            b.refine()


def _separate(a: ThomEncoding, b: ThomEncoding, distinct: bool) -> int:
    """Order by interval refinement alone.

    Valid when both intervals isolate roots of one square-free polynomial
    (overlapping intervals then hold the same root) or when the numbers are
    known to differ (``distinct``), in which case refinement terminates.
    """
    while True:
        if a.is_rational and b.is_rational:
            return _sign(a._lo - b._lo)
        if a._hi <= b._lo:
            return -1
        if b._hi <= a._lo:
            return 1
        if not distinct:
            return 0
        if a._hi - a._lo >= b._hi - b._lo:
            a.refine()
        else:
            b.refine()


def coprime_base(polys: Iterable[UPoly]) -> list[UPoly]:
    """Pairwise coprime square-free polynomials with the same real roots as ``polys``."""
    base: list[UPoly] = []
    for p in polys:
        if p.degree <= 0:
            continue
        todo = [p.squarefree()]
        while todo:
            q = todo.pop()
            for k, b in enumerate(base):
                g = poly_gcd(q, b)
                if g.degree > 0:
                    del base[k]
                    rest = [x for x in (b // g, q // g) if x.degree > 0]
                    base.append(g.primitive())
                    todo.extend(x.primitive() for x in rest)
                    break
            else:
                base.append(q)
    return base


def sorted_roots(polys: Iterable[UPoly]) -> list[ThomEncoding]:
    """Distinct real roots of all ``polys`` in increasing order.

    Each root is encoded with respect to one element of a coprime base, so
    roots from different base elements are known to differ and can be
    ordered by refining intervals, without gcd tests.
    """
    groups = [thom_encode(b) for b in coprime_base(polys)]
    roots = [x for g in groups for x in g]
    return sorted(roots, key=cmp_to_key(lambda a, b: _separate(a, b, distinct=a._sf != b._sf)))


def _exact(x) -> bool:
    return not isinstance(x, ThomEncoding) or x.is_rational


def rational_between(a, b) -> Fraction:
    """A rational strictly between ``a < b``; either may be a ThomEncoding, a rational or +-inf."""
    def lower(x):
        return x._lo if isinstance(x, ThomEncoding) else Fraction(x)

    def upper(x):
        return x._hi if isinstance(x, ThomEncoding) else Fraction(x)

    if a == -math.inf and b == math.inf:
        return Fraction(0)
    if a == -math.inf:
        return Fraction(math.floor(lower(b)) - 1)
    if b == math.inf:
        return Fraction(math.ceil(upper(a)) + 1)
    while True:
        hi_a, lo_b = upper(a), lower(b)
        if hi_a < lo_b:
            return (hi_a + lo_b) / 2
        if hi_a == lo_b and not _exact(a) and not _exact(b):
            return hi_a
        wa = Fraction(0) if _exact(a) else a._hi - a._lo
        wb = Fraction(0) if _exact(b) else b._hi - b._lo
        if wa == 0 and wb == 0:
            raise ValueError("rational_between needs a < b")
        if wa >= wb:
            a.refine()
        else:
            b.refine()


# ---------------------------------------------------------------------------
# Resultants over Q[Y]
# ---------------------------------------------------------------------------

def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det *= p
        for r in range(c + 1, n):
            if m[r][c]:
                q = m[r][c] / p
                row_c = m[c]
                row_r = m[r]
                for k in range(c, n):
                    row_r[k] -= q * row_c[k]
    return det


def _sylvester(f: Sequence[Fraction], g: Sequence[Fraction]) -> list[list[Fraction]]:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> UPoly:
    # Newton divided differences
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * UPoly([-xs[i], 1]) + coef[i]
    return p


def resultant(f: Sequence[UPoly], g: Sequence[UPoly]) -> UPoly:
    """``Res_X(f, g)`` for ``f, g`` in ``Q[Y][X]``, returned as a polynomial in ``Y``.

    ``f`` and ``g`` are lists of ``Y``-polynomials indexed by the power of ``X``
    (low first).  The Sylvester matrix uses the formal ``X``-degrees, so the
    result vanishes at ``y`` when the specializations share a root *or* both
    leading coefficients vanish at ``y``.
    """
    f = [p if isinstance(p, UPoly) else UPoly([p]) for p in f]
    g = [p if isinstance(p, UPoly) else UPoly([p]) for p in g]
    while f and f[-1].is_zero():
        f = f[:-1]
    while g and g[-1].is_zero():
        g = g[:-1]
    if not f or not g:
        raise ZeroPolynomial("resultant with the zero polynomial")
    m, n = len(f) - 1, len(g) - 1
    dyf = max(p.degree for p in f)
    dyg = max(p.degree for p in g)
    bound = n * max(dyf, 0) + m * max(dyg, 0)
    xs = [Fraction(k) for k in range(bound + 1)]
    ys = []
    for y in xs:
        fy = [p(y) for p in f]
        gy = [p(y) for p in g]
        ys.append(_det(_sylvester(fy, gy)) if m + n > 0 else Fraction(1))
    return _interpolate(xs, ys)


def value_at(P: UPoly, x: ThomEncoding) -> ThomEncoding:
    """The algebraic number ``P(x)`` as a Thom encoding of a resultant factor."""
    if x.is_rational:
        return ThomEncoding.rational(P(x._lo))
    # R(Y) = Res_X(f(X), Y - P(X)) vanishes exactly at the values P(x_k)
    fx = [UPoly([c]) for c in x._sf.coeffs]
    p0 = P.coeffs[0] if P.coeffs else Fraction(0)
    gx = [UPoly([-p0, 1])] + [UPoly([-c]) for c in P.coeffs[1:]]
    R = resultant(fx, gx).primitive()
    cands = thom_encode(R)
    while True:
        lo, hi = _interval_eval(P, x._lo, x._hi)
        hits = [c for c in cands if not (c._hi < lo or c._lo > hi)]
        if len(hits) == 1:
            return ThomEncoding.rational(hits[0]._lo) if hits[0].is_rational else hits[0]
        for c in hits:
            c.refine()
        x.refine()
        if x.is_rational:
            return ThomEncoding.rational(P(x._lo))


# ---------------------------------------------------------------------------
# Removal of infinitesimals
# ---------------------------------------------------------------------------

class ZeroPolynomialInInput(ValueError):
    pass


class EpsPolynomial:
    """An element of ``Q[eps_1..eps_n][T]`` stored as ``{eps exponents: UPoly in T}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[int], UPoly] | UPoly):
        if isinstance(terms, UPoly):
            terms = {(): terms}
        width = max((len(k) for k in terms), default=0)
        acc: dict[tuple[int, ...], UPoly] = {}
        for k, p in terms.items():
            key = tuple(k) + (0,) * (width - len(k))
            acc[key] = acc.get(key, UPoly()) + p
        self.terms = {k: p for k, p in acc.items() if not p.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def components(self) -> list[tuple[tuple[int, ...], UPoly]]:
        """Nonzero ``(monomial, G_alpha)`` pairs in graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def specialize(self, eps: Sequence[Fraction]) -> UPoly:
        out = UPoly()
        for k, p in self.terms.items():
            c = Fraction(1)
            for e, v in zip(k, eps):
                c *= Fraction(v) ** e
            out = out + p.scale(c)
        return out

    def __repr__(self) -> str:
        parts = []
        for k, p in self.components():
            mon = "*".join(f"e{i + 1}^{e}" if e > 1 else f"e{i + 1}" for i, e in enumerate(k) if e)
            parts.append(f"({p.to_text()})" + (f"*{mon}" if mon else ""))
        return "EpsPolynomial(" + " + ".join(parts or ["0"]) + ")"


def remove_infinitesimals(G: Iterable[EpsPolynomial]) -> list[ThomEncoding]:
    """Sorted Thom encodings of the real roots of all nonconstant coefficient polynomials.

    Each ``G`` is split as ``sum_alpha eps^alpha * G_alpha``; the roots of the
    nonconstant ``G_alpha`` are returned, encoded with respect to their product.
    Every open interval between consecutive outputs avoids the standard parts of
    the roots of ``G`` over the infinitesimal extension.
    """
    H: list[UPoly] = []
    for g in G:
        if g.is_zero():
            raise ZeroPolynomialInInput("zero polynomial among the inputs")
        H.extend(p for _, p in g.components() if p.degree > 0)
    if not H:
        return []
    prod = UPoly([1])
    for h in H:
        prod = prod * h
    return thom_encode(prod)
