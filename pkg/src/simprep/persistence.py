"""Persistent homology of finite filtrations over the rationals.

Persistent Betti numbers ``b_p^{i,j}`` are ranks of ``H_p(K_i) -> H_p(K_j)``,
with the sentinels ``K_{-1} = empty`` and ``K_{N+1} = K_N``.  Multiplicities
come from the four-term difference of persistent Betti numbers, where the map
into the terminal index ``N+1`` is taken to be zero: a class still alive in
``K_N`` dies at ``N+1`` and is reported with death ``inf``.

:func:`barcode_oracle` is a separate standard column reduction over a
simplex-wise refinement, used to check :func:`barcode`.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, Sequence

from .linalg import ColumnReducer
from .simplicial import SimplicialComplex

INF = math.inf


class IndexOutOfRange(IndexError):
    pass


class NotNested(ValueError):
    def __init__(self, step: int, simplex):
        super().__init__(f"simplex {list(simplex)} of K_{step} is missing from K_{step + 1}")
        self.step = step
        self.simplex = simplex


class Filtration:
    """Nested complexes ``K_0 <= ... <= K_N`` with strictly increasing labels."""

    def __init__(self, complexes: Sequence[SimplicialComplex], labels: Sequence | None = None):
        self.complexes = list(complexes)
        self.labels = list(range(len(self.complexes))) if labels is None else list(labels)
        if len(self.labels) != len(self.complexes):
            raise ValueError("one label per complex is required")
        for i in range(len(self.complexes) - 1):
            bad = self.complexes[i].simplex_set - self.complexes[i + 1].simplex_set
            if bad:
                raise NotNested(i, min(bad, key=lambda s: (len(s), s)))
        for a, b in zip(self.labels, self.labels[1:]):
            if not a < b:
                raise ValueError(f"labels must increase strictly: {a!r} then {b!r}")
        self._cache: dict = {}

    @property
    def N(self) -> int:
        return len(self.complexes) - 1

    def __len__(self) -> int:
        return len(self.complexes)

    def complex(self, i: int) -> SimplicialComplex:
        """``K_i`` with the sentinels ``K_{-1} = empty`` and ``K_{N+1} = K_N``."""
        if i < -1 or i > self.N + 1:
            raise IndexOutOfRange(i)
        if i == -1 or self.N < 0:
            return SimplicialComplex()
        return self.complexes[min(i, self.N)]

    def label(self, i: int):
        if i == self.N + 1:
            return INF
        return self.labels[i]

    def step_of(self) -> dict:
        """First index at which each simplex appears."""
        seen = {}
        for i, K in enumerate(self.complexes):
            for s in K.simplex_set:
                seen.setdefault(s, i)
        return seen

    def __eq__(self, other) -> bool:
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.complexes == other.complexes and self.labels == other.labels

    def __repr__(self) -> str:
        return f"Filtration(N={self.N}, sizes={[len(K) for K in self.complexes]})"

    # -- serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"labels": [label_to_json(l) for l in self.labels],
                "complexes": [K.to_json() for K in self.complexes]}

    @classmethod
    def from_json(cls, obj) -> "Filtration":
        if isinstance(obj, str):
            obj = json.loads(obj)
        complexes = [SimplicialComplex.from_json(c) for c in obj["complexes"]]
        labels = obj.get("labels")
        if labels is not None:
            labels = [label_from_json(l) for l in labels]
        return cls(complexes, labels)


def label_to_json(l):
    if isinstance(l, bool):
        raise TypeError("boolean label")
    if isinstance(l, int):
        return l
    if isinstance(l, Fraction):
        return str(l) if l.denominator != 1 else int(l)
    if hasattr(l, "to_json"):
        return l.to_json()
    raise TypeError(f"cannot serialize label {l!r}")


def label_from_json(l):
    if isinstance(l, int):
        return l
    if isinstance(l, str):
        return Fraction(l)
    if isinstance(l, dict):
        from .realroots import ThomEncoding

        return ThomEncoding.from_json(l)
    raise ValueError(f"bad label {l!r}")


def label_text(l) -> str:
    if l == INF:
        return "inf"
    if isinstance(l, (int, Fraction)):
        return str(l)
    if hasattr(l, "to_json"):
        return json.dumps(l.to_json(), separators=(",", ":"))
    return str(l)


# ---------------------------------------------------------------------------
# Persistent Betti numbers
# ---------------------------------------------------------------------------

class _Ranks:
    """Per-degree cache: cycle bases of each ``K_i`` and boundary ranks of each ``K_j``."""

    def __init__(self, F: Filtration, p: int):
        self.F = F
        self.p = p
        top = F.complexes[-1] if F.complexes else SimplicialComplex()
        self.rows = {s: n for n, s in enumerate(top.simplices(p))}
        self.lower = {s: n for n, s in enumerate(top.simplices(p - 1))} if p > 0 else {}
        self._cycles: dict[int, list[dict]] = {}
        self._bounds: dict[int, list[dict]] = {}

    def cycles(self, i: int) -> list[dict]:
        if i not in self._cycles:
            K = self.F.complex(i)
            simp = K.simplices(self.p)
            if self.p == 0:
                basis = [{self.rows[s]: 1} for s in simp]
            else:
                cols = [{self.lower[s[:k] + s[k + 1:]]: (-1) ** k for k in range(len(s))} for s in simp]
                red = ColumnReducer(track=True)
                for c in cols:
                    red.add(c)
                basis = [{self.rows[simp[n]]: v for n, v in vec.items()} for vec in red.kernel]
            self._cycles[i] = basis
        return self._cycles[i]

    def boundaries(self, j: int) -> list[dict]:
        if j not in self._bounds:
            K = self.F.complex(j)
            self._bounds[j] = [{self.rows[s[:k] + s[k + 1:]]: (-1) ** k for k in range(len(s))}
                               for s in K.simplices(self.p + 1)]
        return self._bounds[j]

    def rank(self, i: int, j: int) -> int:
        if i == -1:
            return 0
        red = ColumnReducer()
        for c in self.boundaries(j):
            red.add(c)
        base = red.rank
        for z in self.cycles(i):
            red.add(z)
        return red.rank - base


def _ranks(F: Filtration, p: int) -> _Ranks:
    key = ("ranks", p)
    if key not in F._cache:
        F._cache[key] = _Ranks(F, p)
    return F._cache[key]


def persistent_betti(F: Filtration, p: int, i: int, j: int) -> int:
    """Rank of ``H_p(K_i) -> H_p(K_j)``, for ``-1 <= i <= j <= N+1``."""
    if p < 0:
        raise ValueError("p must be >= 0")
    if not (-1 <= i <= j <= F.N + 1):
        raise IndexOutOfRange((i, j))
    key = ("b", p, i, j)
    if key not in F._cache:
        F._cache[key] = _ranks(F, p).rank(i, j)
    return F._cache[key]


def multiplicities(F: Filtration, p: int) -> dict[tuple[int, int], int]:
    """``mu_p^{i,j}`` for ``0 <= i <= j <= N+1`` (zero on the diagonal)."""
    n = F.N + 1

    def b(i, j):
        # every class dies on entering the terminal index
        return 0 if j == n else persistent_betti(F, p, i, j)

    mu = {}
    for i in range(n + 1):
        mu[(i, i)] = 0
        for j in range(i + 1, n + 1):
            mu[(i, j)] = (b(i, j - 1) - b(i, j)) - (b(i - 1, j - 1) - b(i - 1, j))
    return mu


def _cmp(a, b) -> int:
    if a == b:
        return 0
    return -1 if a < b else 1


class Barcode:
    """Bars ``(birth, death, multiplicity)`` in one homology degree.

    ``intervals`` keeps the same bars by filtration index, with ``N+1`` for
    bars that never die.
    """

    def __init__(self, p: int, entries: Iterable[tuple], intervals: Iterable[tuple] | None = None):
        self.p = p
        key = cmp_to_key(lambda x, y: _cmp(x[0], y[0]) or _cmp(x[1], y[1]))
        self.entries = sorted((tuple(e) for e in entries), key=key)
        self.intervals = sorted(intervals) if intervals is not None else None
        for birth, death, m in self.entries:
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            if not birth < death:
                raise ValueError(f"birth {birth!r} is not before death {death!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.p == other.p and self.entries == other.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"Barcode(p={self.p}, {self.entries})"

    def total(self) -> int:
        return sum(m for _, _, m in self.entries)

    def alive_at(self, t) -> int:
        """Summed multiplicity of bars with ``birth <= t < death``."""
        return sum(m for b, d, m in self.entries if not t < b and t < d)

    def rows(self) -> list[tuple[int, str, str, int]]:
        return [(self.p, label_text(b), label_text(d), m) for b, d, m in self.entries]


def barcode(F: Filtration, l: int) -> list[Barcode]:
    """Barcodes ``B_0 .. B_l`` from the multiplicity formula."""
    if l < 0:
        raise ValueError("l must be >= 0")
    out = []
    for p in range(l + 1):
        mu = multiplicities(F, p)
        idx = [(i, j, m) for (i, j), m in sorted(mu.items()) if m > 0]
        out.append(Barcode(p, [(F.label(i), F.label(j), m) for i, j, m in idx], idx))
    return out


def barcode_oracle(F: Filtration, p: int) -> Barcode:
    """Barcode by the standard reduction of a simplex-wise refinement."""
    step = F.step_of()
    order = sorted(step, key=lambda s: (step[s], len(s), s))
    pos = {s: n for n, s in enumerate(order)}
    pivots: dict[int, dict[int, Fraction]] = {}
    killer: dict[int, int] = {}
    positive = set()
    for n, s in enumerate(order):
        col = {}
        if len(s) > 1:
            for k in range(len(s)):
                col[pos[s[:k] + s[k + 1:]]] = Fraction((-1) ** k)
        while col:
            low = max(col)
            if low not in pivots:
                break
            other = pivots[low]
            c = col[low] / other[low]
            for r, v in other.items():
                w = col.get(r, 0) - c * v
                if w:
                    col[r] = w
                else:
                    col.pop(r, None)
        if col:
            low = max(col)
            pivots[low] = col
            killer[low] = n
        else:
            positive.add(n)
    counts: dict[tuple[int, int], int] = {}
    for n in positive:
        s = order[n]
        if len(s) - 1 != p:
            continue
        birth = step[s]
        death = step[order[killer[n]]] if n in killer else F.N + 1
        if birth != death:
            counts[(birth, death)] = counts.get((birth, death), 0) + 1
    idx = [(i, j, m) for (i, j), m in sorted(counts.items())]
    return Barcode(p, [(F.label(i), F.label(j), m) for i, j, m in idx], idx)


def lower_star_filtration(K: SimplicialComplex, vertex_values: Mapping[int, object]) -> Filtration:
    """Full subcomplexes on the vertices with value at most each distinct value."""
    missing = [v for v in K.vertices if v not in vertex_values]
    if missing:
        raise ValueError(f"vertex {missing[0]} has no value")
    values = sorted({vertex_values[v] for v in K.vertices})
    complexes = [K.full_subcomplex(v for v in K.vertices if vertex_values[v] <= t) for t in values]
    return Filtration(complexes, values)


def barcodes_to_csv(bars: Sequence[Barcode], approx: bool = False) -> str:
    lines = ["p,birth,death,multiplicity" + (",birth_approx,death_approx" if approx else "")]
    for B in bars:
        for (b, d, m), row in zip(B.entries, B.rows()):
            cells = [str(row[0]), _csv_cell(row[1]), _csv_cell(row[2]), str(m)]
            if approx:
                cells += [_approx(b), _approx(d)]
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _csv_cell(s: str) -> str:
    return '"' + s.replace('"', '""') + '"' if "," in s or '"' in s else s


def _approx(x) -> str:
    if x == INF:
        return "inf"
    if hasattr(x, "approx"):
        return x.approx()
    return repr(float(x))
