"""Recursive poset construction and the simplicial replacement built from it.

For a tuple of formulas indexed by ``J`` and a cover oracle, the poset
``P_{m,i}`` consists of paths ``(I_0, ..., I_r)``:

* ``r = 0``: the singletons ``{j}``, ``j`` in ``J``;
* otherwise ``I_0`` is a subset of ``J`` with ``2 <= card(I_0) <= m + 2`` and
  the rest of the path is an element of ``P_{m - card(I_0) + 1, i + 1}`` built
  over the index set ``J_{I_0}``: all cover members of the conjunctions
  indexed by supersets ``I' >= I_0`` of size at most ``m + 2``.

The order complex of ``P_{l+1, 0}`` is the simplicial replacement at level
``l``; the full subcomplex on elements with ``I_0`` inside ``J'`` models the
union over ``J'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .covers import CoverOracle, UnknownLabel, formula_key
from .poset import AtomTable, Poset, PosetElement, order_complex, path_leq
from .simplicial import SimplicialComplex

DEFAULT_BUDGET = 10**6


class RecursionBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TupleOfFormulas:
    """Index set ``J`` with the formula id of each index."""

    formulas: Mapping[Hashable, str]

    def __post_init__(self):
        if not self.formulas:
            raise ValueError("a tuple of formulas needs at least one index")

    @classmethod
    def of(cls, labels: Iterable[str]) -> "TupleOfFormulas":
        """Each label names its own formula (the usual case for catalogs and scenes)."""
        return cls({str(l): str(l) for l in labels})

    @property
    def labels(self) -> list:
        return sorted(self.formulas, key=str)

    def restrict(self, Jprime: Iterable) -> "TupleOfFormulas":
        Jprime = set(Jprime)
        return TupleOfFormulas({j: f for j, f in self.formulas.items() if j in Jprime})


class ReplacementPoset(Poset):
    """A path poset that remembers its construction (labels, table, m, i)."""

    def __init__(self, elements, *, table: AtomTable, labels: Mapping[Hashable, int], m: int, i: int):
        super().__init__(elements, path_leq, chain_bound=2 * m + 2 if m >= -1 else None,
                         sort_key=PosetElement.sort_key)
        self.table = table
        self.labels = dict(labels)
        self.m = m
        self.i = i

    def _upsets(self) -> list[list[int]]:
        # only elements whose first set sits inside ours can be above us
        if self._up is None:
            paths = [e.path for e in self.elements]
            groups: dict[frozenset, list[int]] = {}
            for j, p in enumerate(paths):
                groups.setdefault(p[0], []).append(j)
            up = []
            for i, pb in enumerate(paths):
                row = []
                for I0, members in groups.items():
                    if not I0 <= pb[0]:
                        continue
                    for j in members:
                        pa = paths[j]
                        if j != i and len(pa) <= len(pb) and all(pa[k] <= pb[k] for k in range(1, len(pa))):
                            row.append(j)
                up.append(sorted(row))
            self._up = up
        return self._up


class _Builder:
    def __init__(self, oracle: CoverOracle, budget: int):
        self.oracle = oracle
        self.budget = budget
        self.table = AtomTable()
        self.formula: dict[int, str] = {}
        self._members: dict[tuple, list[int]] = {}
        self._posets: dict[tuple, list[tuple]] = {}
        self.count = 0

    def members(self, level: int, I: frozenset) -> list[int]:
        """Atoms ``(I, p)`` for the cover members of the conjunction over ``I``."""
        hit = self._members.get((level, I))
        if hit is None:
            key = formula_key(self.formula[a] for a in I)
            ids = self.oracle.cover(level, key)
            hit = []
            for p, fid in enumerate(ids):
                atom = self.table.pair(I, p)
                self.formula[atom] = fid
                hit.append(atom)
            self._members[(level, I)] = hit
        return hit

    def index_sets(self, m: int, level: int, universe: frozenset) -> dict[frozenset, frozenset]:
        """``J_{m,level,I}`` for every ``I`` with ``2 <= card(I) <= m + 2``.

        Built by downward induction on ``card(I)``: members of ``I`` itself plus
        everything inherited from the one-larger supersets.  Conjunctions whose
        proper sub-conjunctions are already empty are skipped without asking
        the oracle.
        """
        top = min(m + 2, len(universe))
        atoms = sorted(universe, key=lambda a: self.table.names[a])
        nonempty: dict[int, list[frozenset]] = {1: [frozenset([a]) for a in atoms]}
        own: dict[frozenset, list[int]] = {}
        for k in range(2, top + 1):
            prev = set(nonempty[k - 1])
            layer = []
            for combo in combinations(atoms, k):
                I = frozenset(combo)
                if k > 2 and any(I - {a} not in prev for a in I):
                    continue
                mem = self.members(level, I)
                if mem:
                    own[I] = mem
                    layer.append(I)
            nonempty[k] = layer
            if not layer:
                top = k
                break
        J: dict[frozenset, frozenset] = {}
        for k in range(top, 1, -1):
            for I in nonempty.get(k, []):
                acc = set(own[I])
                for I2 in nonempty.get(k + 1, []):
                    if I < I2:
                        acc.update(J[I2])
                J[I] = frozenset(acc)
        return J

    def build(self, m: int, level: int, universe: frozenset) -> list[tuple]:
        memo_key = (m, level, universe)
        hit = self._posets.get(memo_key)
        if hit is not None:
            return hit
        out = [(frozenset([a]),) for a in universe]
        if m >= 0 and len(universe) >= 2:
            J = self.index_sets(m, level, universe)
            for I in sorted(J, key=lambda s: (len(s), sorted(self.table.names[a] for a in s))):
                JI = J[I]
                if not JI:
                    continue
                sub = self.build(m - len(I) + 1, level + 1, JI)
                out.extend((I,) + path for path in sub)
        self.count += len(out)
        if len(out) > self.budget or self.count > 50 * self.budget:
            raise RecursionBudgetExceeded(f"more than {self.budget} poset elements")
        self._posets[memo_key] = out
        return out


def build_poset(Phi: TupleOfFormulas, m: int, i: int, oracle: CoverOracle,
                budget: int = DEFAULT_BUDGET) -> ReplacementPoset:
    """The poset ``P_{m,i}(Phi)`` for the given cover oracle."""
    if m < -1:
        raise ValueError("m must be >= -1")
    if i < 0:
        raise ValueError("i must be >= 0")
    b = _Builder(oracle, budget)
    labels = {}
    for j in Phi.labels:
        a = b.table.label(j)
        b.formula[a] = Phi.formulas[j]
        labels[j] = a
    paths = b.build(m, i, frozenset(labels.values()))
    elems = [PosetElement(p, b.table) for p in paths]
    return ReplacementPoset(elems, table=b.table, labels=labels, m=m, i=i)


def sub_poset(P: ReplacementPoset, Jprime: Iterable) -> ReplacementPoset:
    """Elements whose first index set lies in ``Jprime``."""
    Jprime = list(Jprime)
    for j in Jprime:
        if j not in P.labels:
            raise UnknownLabel(j)
    allowed = frozenset(P.labels[j] for j in Jprime)
    keep = [e for e in P.elements if e.path[0] <= allowed]
    return ReplacementPoset(keep, table=P.table, labels={j: P.labels[j] for j in Jprime}, m=P.m, i=P.i)


@dataclass
class ReplacementResult:
    """``Delta(P_{l+1,0}(Phi))`` with lazily built subcomplexes for subsets of ``J``."""

    poset: ReplacementPoset
    complex: SimplicialComplex
    ell: int
    _subs: dict = field(default_factory=dict, repr=False)

    def sub_complex(self, Jprime: Iterable) -> SimplicialComplex:
        key = frozenset(Jprime)
        if key not in self._subs:
            sub = sub_poset(self.poset, key)
            verts = [self.poset.index(e) for e in sub.elements]
            self._subs[key] = self.complex.full_subcomplex(verts)
        return self._subs[key]

    @property
    def sub_complexes(self) -> "_LazySubs":
        return _LazySubs(self)

    def to_json(self) -> dict:
        return {"ell": self.ell, "complex": self.complex.to_json(), "poset": self.poset.to_json()}


class _LazySubs:
    def __init__(self, res: ReplacementResult):
        self._res = res

    def __getitem__(self, Jprime) -> SimplicialComplex:
        return self._res.sub_complex(Jprime)


def simplicial_replacement(Phi: TupleOfFormulas, l: int, oracle: CoverOracle,
                           budget: int = DEFAULT_BUDGET) -> ReplacementResult:
    """Order complex of ``P_{l+1,0}(Phi)``."""
    if l < 0:
        raise ValueError("l must be >= 0")
    P = build_poset(Phi, l + 1, 0, oracle, budget=budget)
    return ReplacementResult(P, order_complex(P), l)
