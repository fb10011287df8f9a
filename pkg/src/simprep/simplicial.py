"""Finite abstract simplicial complexes and their rational homology."""
from __future__ import annotations

import json
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .linalg import ColumnReducer, RationalMatrix

Simplex = tuple  # sorted tuple of vertex ids


class InconsistentPredicate(ValueError):
    """A nerve predicate reported a superset nonempty while a subset was empty."""


class SimplicialComplex:
    """A face-closed set of simplices over integer vertex ids.

    Simplices are sorted vertex tuples.  Within each dimension they are kept in
    lexicographic order, which fixes the bases of the chain groups.
    """

    __slots__ = ("_simplices", "_by_dim", "_index")

    def __init__(self, simplices: Iterable[Sequence[int]] = (), *, close: bool = True):
        faces: set[Simplex] = set()
        for s in simplices:
            t = tuple(sorted(set(int(v) for v in s)))
            if not t:
                continue
            if close:
                if t in faces:
                    continue
                for k in range(1, len(t) + 1):
                    faces.update(combinations(t, k))
            else:
                faces.add(t)
        self._simplices = frozenset(faces)
        by_dim: dict[int, list[Simplex]] = {}
        for s in faces:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {d: sorted(v) for d, v in sorted(by_dim.items())}
        self._index = {d: {s: i for i, s in enumerate(v)} for d, v in self._by_dim.items()}
        if not close:
            for s in faces:
                if len(s) > 1 and any(f not in self._simplices for f in combinations(s, len(s) - 1)):
                    raise ValueError(f"simplex {s} is missing a face")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_maximal(cls, simplices: Iterable[Sequence[int]]) -> "SimplicialComplex":
        return cls(simplices)

    @classmethod
    def full_simplex(cls, n: int) -> "SimplicialComplex":
        """The ``n``-simplex on vertices ``0..n``."""
        return cls([range(n + 1)])

    # -- queries ------------------------------------------------------------------
    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self._simplices

    def __iter__(self):
        for d in self._by_dim:
            yield from self._by_dim[d]

    def __len__(self) -> int:
        return len(self._simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __hash__(self) -> int:
        return hash(self._simplices)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self._simplices <= other._simplices

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector()})"

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self._by_dim.get(0, [])]

    @property
    def simplex_set(self) -> frozenset:
        return self._simplices

    def simplices(self, p: int) -> list[Simplex]:
        return self._by_dim.get(p, [])

    def index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def f_vector(self) -> list[int]:
        return [len(self._by_dim.get(d, [])) for d in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def maximal_simplices(self) -> list[Simplex]:
        covered = set()
        for s in self._simplices:
            if len(s) > 1:
                covered.update(combinations(s, len(s) - 1))
        return sorted((s for s in self._simplices if s not in covered), key=lambda s: (len(s), s))

    def full_subcomplex(self, verts: Iterable[int]) -> "SimplicialComplex":
        vs = set(verts)
        return SimplicialComplex((s for s in self._simplices if vs.issuperset(s)), close=False)

    def relabel(self) -> tuple["SimplicialComplex", dict[int, int]]:
        """Copy with vertices renumbered ``0..n-1`` in increasing order."""
        m = {v: i for i, v in enumerate(self.vertices)}
        return SimplicialComplex((tuple(m[v] for v in s) for s in self._simplices), close=False), m

    # -- serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        verts = self.vertices
        return {
            "vertices": (max(verts) + 1) if verts else 0,
            "simplices": [list(s) for s in self.maximal_simplices()],
        }

    @classmethod
    def from_json(cls, obj) -> "SimplicialComplex":
        if isinstance(obj, str):
            obj = json.loads(obj)
        n = int(obj.get("vertices", 0))
        sims = [tuple(int(v) for v in s) for s in obj["simplices"]]
        bad = [v for s in sims for v in s if v < 0 or v >= n]
        if bad:
            raise ValueError(f"vertex {bad[0]} outside 0..{n - 1}")
        return cls(sims)


def skeleton(K: SimplicialComplex, l: int) -> SimplicialComplex:
    """All simplices of dimension at most ``l``."""
    if l < 0:
        raise ValueError("skeleton dimension must be >= 0")
    return SimplicialComplex((s for s in K.simplex_set if len(s) <= l + 1), close=False)


def boundary_matrix(K: SimplicialComplex, p: int) -> RationalMatrix:
    """Matrix of the boundary map ``C_p(K) -> C_{p-1}(K)`` in the lexicographic bases."""
    if p < 0:
        raise ValueError("p must be >= 0")
    cols = K.simplices(p)
    if p == 0:
        return RationalMatrix(0, len(cols))
    rows = K.simplices(p - 1)
    idx = {s: i for i, s in enumerate(rows)}
    columns = []
    for s in cols:
        columns.append({idx[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))})
    return RationalMatrix(len(rows), len(cols), columns)


def boundary_columns(K: SimplicialComplex, p: int, row_index: dict | None = None) -> list[dict]:
    """Integer boundary columns of the ``p``-simplices, rows indexed by ``row_index``."""
    if row_index is None:
        row_index = {s: i for i, s in enumerate(K.simplices(p - 1))}
    out = []
    for s in K.simplices(p):
        out.append({row_index[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))} if p else {})
    return out


def _rank(K: SimplicialComplex, p: int) -> int:
    if p <= 0 or p > K.dim:
        return 0
    red = ColumnReducer()
    for c in boundary_columns(K, p):
        red.add(c)
    return red.rank


def betti_numbers(K: SimplicialComplex, l: int) -> list[int]:
    """Rational Betti numbers ``b_0..b_l``."""
    if l < 0:
        raise ValueError("l must be >= 0")
    ranks = [_rank(K, p) for p in range(l + 2)]
    return [len(K.simplices(p)) - ranks[p] - ranks[p + 1] for p in range(l + 1)]


def nerve(cover: Sequence[Hashable], nonempty: Callable[[frozenset], bool]) -> tuple[SimplicialComplex, list]:
    """Nerve of a cover given by labels and an intersection predicate.

    Vertices are the positions of the labels in ``cover`` whose own set is
    nonempty.  The predicate receives frozensets of labels.  Returns the
    complex and the list of labels (vertex ``i`` is ``cover[i]``).
    """
    labels = list(cover)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate cover labels")
    layer = [(i,) for i in range(len(labels)) if nonempty(frozenset([labels[i]]))]
    present = set(layer)
    simplices = list(layer)
    while layer:
        nxt = []
        for s in layer:
            for v in range(s[-1] + 1, len(labels)):
                t = s + (v,)
                if not nonempty(frozenset(labels[i] for i in t)):
                    continue
                missing = [f for f in combinations(t, len(t) - 1) if f not in present]
                if missing:
                    raise InconsistentPredicate(
                        f"{[labels[i] for i in t]} reported nonempty but "
                        f"{[labels[i] for i in missing[0]]} is empty"
                    )
                nxt.append(t)
        present.update(nxt)
        simplices.extend(nxt)
        layer = nxt
    return SimplicialComplex(simplices, close=False), labels
