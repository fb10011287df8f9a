"""Cover oracles.

A cover oracle answers: given a conjunction of previously issued formulas
(named by a :data:`FormulaKey`), which formulas cover it?  An empty answer
means the conjunction is empty.  Two oracles ship here: one that reads a
declared catalog, and one that computes exact intersections of unions of
closed integer boxes, where every member is a contractible union of boxes.
"""
from __future__ import annotations

import json
import threading
from itertools import product
from typing import Iterable, Mapping, Sequence

from .linalg import rank_of_columns

FormulaKey = tuple  # sorted tuple of formula ids


def formula_key(ids: Iterable[str]) -> FormulaKey:
    """Canonical key of a conjunction: the sorted multiset of member ids."""
    return tuple(sorted(str(i) for i in ids))


class MissingCoverEntry(KeyError):
    def __init__(self, key: FormulaKey):
        super().__init__(key)
        self.key = key

    def __str__(self) -> str:
        return f"no cover declared for conjunction {list(self.key)}"


class UnknownLabel(KeyError):
    pass


class DimensionMismatch(ValueError):
    pass


class CoverOracle:
    """Interface: ``cover(level, key)`` returns the member ids covering ``key``.

    ``connectivity`` is informational only (e.g. ``"contractible"`` or
    ``"declared"``); nothing checks it.
    """

    connectivity = "unknown"

    def cover(self, level: int, key: FormulaKey) -> list[str]:
        raise NotImplementedError


class DeclaredCoverOracle(CoverOracle):
    """Answers from a fixed catalog ``{key: [member ids]}``.

    A key absent from the catalog is treated as empty when one of its
    sub-multisets is declared empty; otherwise :class:`MissingCoverEntry` is
    raised and the catalog has to be extended.
    """

    connectivity = "declared"

    def __init__(self, catalog: Mapping[Iterable[str], Sequence[str]]):
        self.catalog: dict[FormulaKey, tuple[str, ...]] = {}
        for k, v in catalog.items():
            self.catalog[formula_key(k)] = tuple(str(x) for x in v)
        self._empty = [k for k, v in self.catalog.items() if not v]

    def cover(self, level: int, key: FormulaKey) -> list[str]:
        key = formula_key(key)
        if not key:
            return []
        if key in self.catalog:
            return list(self.catalog[key])
        for e in self._empty:
            if _submultiset(e, key):
                return []
        raise MissingCoverEntry(key)

    def to_json(self) -> dict:
        return {"entries": [{"key": list(k), "members": list(v)} for k, v in sorted(self.catalog.items())]}

    @classmethod
    def from_json(cls, obj) -> "DeclaredCoverOracle":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({tuple(e["key"]): e["members"] for e in obj["entries"]})


def declared_cover_oracle(catalog: Mapping) -> DeclaredCoverOracle:
    return DeclaredCoverOracle(catalog)


def _submultiset(small: Sequence, big: Sequence) -> bool:
    rest = list(big)
    for x in small:
        if x in rest:
            rest.remove(x)
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Boxes
# ---------------------------------------------------------------------------

Box = tuple  # (lo tuple, hi tuple), closed, integer corners


def _box(lo: Sequence[int], hi: Sequence[int]) -> Box:
    lo, hi = tuple(int(x) for x in lo), tuple(int(x) for x in hi)
    if len(lo) != len(hi):
        raise DimensionMismatch(f"corner dimensions differ: {lo} vs {hi}")
    return lo, hi


def box_intersection(a: Box, b: Box) -> Box | None:
    lo = tuple(max(x, y) for x, y in zip(a[0], b[0]))
    hi = tuple(min(x, y) for x, y in zip(a[1], b[1]))
    if any(l > h for l, h in zip(lo, hi)):
        return None
    return lo, hi


def box_contains(outer: Box, inner: Box) -> bool:
    return all(o <= i for o, i in zip(outer[0], inner[0])) and all(i <= o for o, i in zip(outer[1], inner[1]))


class BoxSet:
    """A finite union of closed axis-aligned boxes with integer corners.

    Normal form: boxes that are empty or contained in another box are dropped,
    the rest are deduplicated and sorted.  Degenerate boxes (points, segments)
    are allowed.
    """

    __slots__ = ("dim", "boxes")

    def __init__(self, boxes: Iterable[Sequence], dim: int | None = None):
        bs = [_box(lo, hi) for lo, hi in boxes]
        bs = [b for b in bs if all(l <= h for l, h in zip(*b))]
        dims = {len(b[0]) for b in bs}
        if dim is not None:
            dims.add(dim)
        if len(dims) > 1:
            raise DimensionMismatch(f"boxes of several dimensions: {sorted(dims)}")
        self.dim = dims.pop() if dims else (dim or 0)
        uniq = sorted(set(bs))
        keep = [b for b in uniq if not any(o != b and box_contains(o, b) for o in uniq)]
        self.boxes: tuple[Box, ...] = tuple(keep)

    def is_empty(self) -> bool:
        return not self.boxes

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxSet):
            return NotImplemented
        return self.dim == other.dim and self.boxes == other.boxes

    def __hash__(self) -> int:
        return hash((self.dim, self.boxes))

    def __repr__(self) -> str:
        return f"BoxSet({[list(map(list, b)) for b in self.boxes]})"

    def intersect(self, other: "BoxSet") -> "BoxSet":
        if self.boxes and other.boxes and self.dim != other.dim:
            raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")
        out = []
        for a in self.boxes:
            for b in other.boxes:
                c = box_intersection(a, b)
                if c is not None:
                    out.append(c)
        return BoxSet(out, dim=self.dim)

    def union(self, other: "BoxSet") -> "BoxSet":
        return BoxSet(self.boxes + other.boxes, dim=self.dim)

    def contains_point(self, x: Sequence) -> bool:
        return any(all(l <= v <= h for l, v, h in zip(lo, x, hi)) for lo, hi in self.boxes)

    def cells(self) -> frozenset:
        """Elementary cubes of the union: tuples of ``(a, b)`` with ``b - a`` in ``{0, 1}``."""
        out = set()
        for lo, hi in self.boxes:
            ranges = []
            for l, h in zip(lo, hi):
                ranges.append([(x, x) for x in range(l, h + 1)] + [(x, x + 1) for x in range(l, h)])
            out.update(product(*ranges))
        return frozenset(out)

    def betti(self) -> list[int]:
        """Betti numbers ``b_0 .. b_dim`` of the union, from its cubical chain complex."""
        by_dim: dict[int, list] = {}
        for q in sorted(self.cells()):
            by_dim.setdefault(sum(b - a for a, b in q), []).append(q)
        ranks = [0] * (self.dim + 2)
        for d in range(1, self.dim + 1):
            lower = {q: n for n, q in enumerate(by_dim.get(d - 1, []))}
            ranks[d] = rank_of_columns(_cube_boundary(q, lower) for q in by_dim.get(d, []))
        return [len(by_dim.get(d, [])) - ranks[d] - ranks[d + 1] for d in range(self.dim + 1)]

    def same_union(self, other: "BoxSet") -> bool:
        return self.cells() == other.cells()

    def to_json(self) -> list:
        return [[list(lo), list(hi)] for lo, hi in self.boxes]


def _cube_boundary(q, index: Mapping) -> dict[int, int]:
    col, k = {}, 0
    for i, (a, b) in enumerate(q):
        if a == b:
            continue
        sgn = -1 if k % 2 else 1
        col[index[q[:i] + ((b, b),) + q[i + 1:]]] = sgn
        col[index[q[:i] + ((a, a),) + q[i + 1:]]] = -sgn
        k += 1
    return col


def box_components(boxes: Sequence[Box]) -> list[list[Box]]:
    """Groups of boxes whose unions are the connected components."""
    parent = list(range(len(boxes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(boxes)):
        for j in range(i):
            if box_intersection(boxes[i], boxes[j]) is not None:
                parent[find(i)] = find(j)
    groups: dict[int, list[Box]] = {}
    for i, b in enumerate(boxes):
        groups.setdefault(find(i), []).append(b)
    return list(groups.values())


def contractible_pieces(s: BoxSet) -> list[BoxSet]:
    """Split ``s`` into few contractible closed pieces.

    Connected components that are acyclic are kept whole; in dimension at
    most two that already means contractible.  Anything else falls apart
    into its single boxes.
    """
    out = []
    for comp in box_components(s.boxes):
        whole = BoxSet(comp, dim=s.dim)
        if len(comp) == 1 or (s.dim <= 2 and whole.betti() == [1] + [0] * s.dim):
            out.append(whole)
        else:
            out.extend(BoxSet([b], dim=s.dim) for b in comp)
    return out


def intersection_of(sets: Iterable[BoxSet]) -> BoxSet:
    sets = list(sets)
    if not sets:
        raise ValueError("intersection of no sets")
    acc = sets[0]
    for s in sets[1:]:
        acc = acc.intersect(s)
        if acc.is_empty():
            break
    return acc


def load_scene(obj) -> dict[str, BoxSet]:
    """Parse ``{"dim": k, "sets": {label: [[lo...], [hi...]], ...]}}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    k = int(obj["dim"])
    scene = {}
    for label, boxes in obj["sets"].items():
        for b in boxes:
            if len(b) != 2 or len(b[0]) != k or len(b[1]) != k:
                raise DimensionMismatch(f"box {b} of {label!r} is not {k}-dimensional")
        scene[str(label)] = BoxSet([(b[0], b[1]) for b in boxes], dim=k)
    return scene


def dump_scene(scene: Mapping[str, BoxSet]) -> dict:
    dims = {s.dim for s in scene.values()}
    return {"dim": dims.pop() if dims else 0, "sets": {k: v.to_json() for k, v in scene.items()}}


def intersection_nonempty(scene: Mapping[str, BoxSet], labels: Iterable[str]) -> bool:
    labels = list(labels)
    if not labels:
        raise ValueError("labels must be nonempty")
    for l in labels:
        if l not in scene:
            raise UnknownLabel(l)
    return not intersection_of(scene[l] for l in labels).is_empty()


class BoxCoverOracle(CoverOracle):
    """Covers exact box intersections by contractible pieces.

    With ``pieces="components"`` (default) acyclic connected components stay
    whole, see :func:`contractible_pieces`; ``pieces="boxes"`` issues one
    member per normal-form box, which is simpler but makes posets much larger.

    Top-level ids are the scene labels; each issued member gets a fresh id
    ``"<level>:<n>"`` remembered together with its box, so deeper conjunctions
    can be intersected too.  Answers are memoized per ``(level, key)``.
    """

    connectivity = "contractible"

    def __init__(self, scene: Mapping[str, BoxSet], pieces: str = "components"):
        if pieces not in ("components", "boxes"):
            raise ValueError("pieces must be 'components' or 'boxes'")
        self.pieces = pieces
        dims = {s.dim for s in scene.values() if not s.is_empty()}
        if len(dims) > 1:
            raise DimensionMismatch(f"scene mixes dimensions {sorted(dims)}")
        self.scene = dict(scene)
        self.sets: dict[str, BoxSet] = dict(scene)
        self._memo: dict[tuple, list[str]] = {}
        self._lock = threading.Lock()
        self._counter = 0

    def cover(self, level: int, key: FormulaKey) -> list[str]:
        key = formula_key(key)
        if not key:
            return []
        with self._lock:
            hit = self._memo.get((level, key))
            if hit is not None:
                return list(hit)
            for k in key:
                if k not in self.sets:
                    raise UnknownLabel(k)
            inter = intersection_of(self.sets[k] for k in key)
            ids = []
            if self.pieces == "boxes":
                parts = [BoxSet([b], dim=inter.dim) for b in inter.boxes]
            else:
                parts = contractible_pieces(inter)
            for piece in parts:
                mid = f"{level}:{self._counter}"
                self._counter += 1
                self.sets[mid] = piece
                ids.append(mid)
            self._memo[(level, key)] = ids
            return list(ids)

    def box_of(self, member_id: str) -> BoxSet:
        return self.sets[member_id]


def box_cover_oracle(scene: Mapping[str, BoxSet], pieces: str = "components") -> BoxCoverOracle:
    return BoxCoverOracle(scene, pieces)
