"""Finite posets, down-closures, chains and order complexes.

Two kinds of posets live here.  :class:`Poset` over arbitrary hashable
elements with an explicit relation, and posets whose elements are
:class:`PosetElement` paths ``(I_0, ..., I_r)`` produced by
:mod:`simprep.replacement`.  For paths the order is computed on demand::

    beta <= alpha  iff  r_alpha <= r_beta  and  I^alpha_j is a subset of I^beta_j
                        for every j <= r_alpha

so the *longer* path is the smaller element.  :func:`poset_leq` (``x <= y``),
:func:`precedes` and :func:`dominates` spell out both directions.
"""
from __future__ import annotations

import json
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .simplicial import SimplicialComplex


class MixedPoset(ValueError):
    """Elements from different constructions were compared."""


class ElementNotInPoset(KeyError):
    pass


class ChainBoundExceeded(AssertionError):
    """A chain longer than the poset's declared bound was found."""


class AtomTable:
    """Interned atom identifiers for one construction run.

    An atom is either a top-level label or a pair ``(I, p)`` where ``I`` is a
    frozenset of atom ids and ``p`` the position of a cover member.  Equal
    pairs get equal ids, so index sets built in different branches of the
    recursion can be compared by plain set inclusion.
    """

    def __init__(self):
        self._ids: dict[tuple, int] = {}
        self.atoms: list[tuple] = []
        self.names: list[str] = []
        self.depth: list[int] = []

    def label(self, j: Hashable) -> int:
        key = ("label", j)
        if key not in self._ids:
            self._add(key, str(j), 0)
        return self._ids[key]

    def pair(self, I: frozenset, p: int) -> int:
        key = ("pair", I, p)
        if key not in self._ids:
            inner = ",".join(sorted(self.names[a] for a in I))
            self._add(key, f"{{{inner}}}:{p}", 1 + max(self.depth[a] for a in I))
        return self._ids[key]

    def _add(self, key, name, depth):
        self._ids[key] = len(self.atoms)
        self.atoms.append(key)
        self.names.append(name)
        self.depth.append(depth)

    def __len__(self) -> int:
        return len(self.atoms)


class PosetElement:
    """A path ``(I_0, ..., I_r, emptyset)``; the trailing empty set is implicit."""

    __slots__ = ("path", "table", "_key")

    def __init__(self, path: Sequence[frozenset], table: AtomTable):
        self.path = tuple(frozenset(I) for I in path)
        if not self.path:
            raise ValueError("empty path")
        self.table = table
        self._key = None

    @property
    def r(self) -> int:
        return len(self.path) - 1

    def check_shape(self) -> None:
        """Raise ValueError unless ``card(I_r) = 1`` and ``card(I_j) >= 2`` for ``j < r``."""
        if len(self.path[-1]) != 1:
            raise ValueError(f"last index set of {self} must be a singleton")
        if any(len(I) < 2 for I in self.path[:-1]):
            raise ValueError(f"inner index sets of {self} need at least two atoms")

    def names(self) -> list[list[str]]:
        return [sorted(self.table.names[a] for a in I) for I in self.path]

    def sort_key(self):
        if self._key is None:
            self._key = tuple(tuple(n) for n in self.names())
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, PosetElement):
            return NotImplemented
        return self.table is other.table and self.path == other.path

    def __hash__(self) -> int:
        return hash(self.path)

    def __repr__(self) -> str:
        parts = ["{" + ",".join(n) + "}" for n in self.names()]
        return "(" + ", ".join(parts + ["∅"]) + ")"


def path_leq(beta: PosetElement, alpha: PosetElement) -> bool:
    """``beta <= alpha`` for path elements."""
    if beta.table is not alpha.table:
        raise MixedPoset("elements come from different constructions")
    ra = len(alpha.path)
    if ra > len(beta.path):
        return False
    pa, pb = alpha.path, beta.path
    for j in range(ra):
        if not pa[j] <= pb[j]:
            return False
    return True


def poset_leq(x, y) -> bool:
    """True iff ``x <= y``.  For paths: ``x`` is at least as long and dominated setwise."""
    if isinstance(x, PosetElement) and isinstance(y, PosetElement):
        return path_leq(x, y)
    raise TypeError("poset_leq compares PosetElements; use Poset.leq for general posets")


def precedes(beta: PosetElement, alpha: PosetElement) -> bool:
    """``beta <= alpha`` (beta lies below alpha)."""
    return path_leq(beta, alpha)


def dominates(alpha: PosetElement, beta: PosetElement) -> bool:
    """``alpha >= beta`` (alpha lies above beta)."""
    return path_leq(beta, alpha)


class Poset:
    """A finite poset with a stable element order.

    ``leq(x, y)`` decides ``x <= y``.  ``chain_bound``, when set, caps the
    number of steps ``x_0 < ... < x_k`` in any chain; exceeding it during
    chain enumeration raises :class:`ChainBoundExceeded`.
    """

    def __init__(self, elements: Iterable, leq: Callable[[object, object], bool],
                 chain_bound: int | None = None, sort_key=None):
        elems = list(dict.fromkeys(elements))
        if sort_key is not None:
            elems.sort(key=sort_key)
        self.elements: list = elems
        self.leq = leq
        self.chain_bound = chain_bound
        self._sort_key = sort_key
        self._index = {e: i for i, e in enumerate(elems)}
        self._up: list[list[int]] | None = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_relation(cls, elements: Iterable[Hashable], pairs: Iterable[tuple]) -> "Poset":
        """Poset generated by ``x <= y`` for each ``(x, y)`` in ``pairs``.

        The reflexive-transitive closure is materialized; a cycle raises
        ValueError.
        """
        elems = list(dict.fromkeys(elements))
        above: dict = {e: {e} for e in elems}
        for x, y in pairs:
            if x not in above or y not in above:
                raise ElementNotInPoset((x, y))
            above[x].add(y)
        changed = True
        while changed:
            changed = False
            for e in elems:
                new = set().union(*(above[z] for z in above[e]))
                if new != above[e]:
                    above[e] = new
                    changed = True
        for x in elems:
            for y in above[x]:
                if x != y and x in above[y]:
                    raise ValueError(f"relation has a cycle through {x!r} and {y!r}")
        return cls(elems, lambda a, b: b in above[a])

    @classmethod
    def of_paths(cls, elements: Iterable[PosetElement], chain_bound: int | None = None) -> "Poset":
        return cls(elements, path_leq, chain_bound=chain_bound, sort_key=PosetElement.sort_key)

    # -- basic queries ----------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ElementNotInPoset(x) from None

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def subposet(self, elements: Iterable) -> "Poset":
        keep = set(elements)
        for e in keep:
            if e not in self._index:
                raise ElementNotInPoset(e)
        return Poset([e for e in self.elements if e in keep], self.leq,
                     chain_bound=self.chain_bound, sort_key=self._sort_key)

    def maximal(self) -> list:
        up = self._upsets()
        return [e for i, e in enumerate(self.elements) if not up[i]]

    def minimal(self) -> list:
        below = [0] * len(self.elements)
        for ups in self._upsets():
            for j in ups:
                below[j] += 1
        return [e for i, e in enumerate(self.elements) if not below[i]]

    def _upsets(self) -> list[list[int]]:
        """Indices strictly above each element."""
        if self._up is None:
            n = len(self.elements)
            E = self.elements
            self._up = [[j for j in range(n) if j != i and self.leq(E[i], E[j])] for i in range(n)]
        return self._up

    def hasse(self) -> list[tuple[int, int]]:
        """Cover relations as ``(lower index, upper index)`` pairs."""
        up = self._upsets()
        sets = [set(u) for u in up]
        out = []
        for i, ups in enumerate(up):
            for j in ups:
                if not any(j in sets[k] for k in ups if k != j):
                    out.append((i, j))
        return out

    def chains(self) -> Iterable[tuple[int, ...]]:
        """All nonempty chains as increasing index tuples (lowest element first)."""
        up = self._upsets()
        bound = self.chain_bound

        def extend(chain):
            yield chain
            if bound is not None and len(chain) - 1 > bound:
                raise ChainBoundExceeded(f"chain of length {len(chain) - 1} exceeds {bound}")
            for j in up[chain[-1]]:
                yield from extend(chain + (j,))

        for i in range(len(self.elements)):
            yield from extend((i,))

    def longest_chain(self) -> int:
        """Number of steps in a longest chain (0 for a single element, -1 if empty)."""
        up = self._upsets()
        memo: dict[int, int] = {}

        def height(i):
            if i not in memo:
                memo[i] = max((1 + height(j) for j in up[i]), default=0)
            return memo[i]

        return max((height(i) for i in range(len(self.elements))), default=-1)

    # -- serialization ---------------------------------------------------------------
    def to_json(self) -> dict:
        def enc(e):
            if isinstance(e, PosetElement):
                return e.names() + [["∅"]]
            return e

        return {"elements": [enc(e) for e in self.elements], "hasse": [list(p) for p in self.hasse()]}


def down_closure(P: Poset, A: Iterable) -> Poset:
    """Subposet of elements lying below some member of ``A``."""
    A = list(A)
    for a in A:
        if a not in P:
            raise ElementNotInPoset(a)
    keep = [b for b in P.elements if any(P.leq(b, a) for a in A)]
    return P.subposet(keep)


def order_complex(P: Poset) -> SimplicialComplex:
    """Simplicial complex of chains; vertex ``i`` is ``P.elements[i]``."""
    return SimplicialComplex(P.chains(), close=False)


def poset_from_json(obj) -> Poset:
    """Load the generic (label-level) view of a serialized poset.

    Elements become tuples of tuples of atom names; the order is the
    reflexive-transitive closure of the stored Hasse edges.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)

    def dec(e):
        if isinstance(e, list):
            return tuple(tuple(x) if isinstance(x, list) else x for x in e)
        return e

    elems = [dec(e) for e in obj["elements"]]
    pairs = [(elems[a], elems[b]) for a, b in obj["hasse"]]
    return Poset.from_relation(elems, pairs)


def is_partial_order(P: Poset) -> bool:
    """Brute-force reflexivity, antisymmetry and transitivity check."""
    E = P.elements
    for x in E:
        if not P.leq(x, x):
            return False
    for x, y in combinations(E, 2):
        if P.leq(x, y) and P.leq(y, x):
            return False
    for x in E:
        for y in E:
            if P.leq(x, y):
                for z in E:
                    if P.leq(y, z) and not P.leq(x, z):
                        return False
    return True
