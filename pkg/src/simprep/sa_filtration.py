"""Sub-level-set filtrations of one-variable semi-algebraic sets.

For a closed set ``S`` on the line and a polynomial ``P``, the homotopy type
of ``S_{<=t} = {x in S : P(x) <= t}`` can only change at values ``P(x)``
where ``x`` is a root of ``P'`` inside ``S`` or an endpoint of ``S``.  Those
values are computed exactly as Thom encodings, each sub-level set at a
critical value is computed exactly, and the result is turned into a finite
simplicial filtration whose barcode is the barcode of the continuous one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .formula import (Formula, Realization, is_closed_shape, make_closed, realization,
                      sorted_points)
from .persistence import Barcode, Filtration, barcode
from .realroots import ThomEncoding, resultant, thom_encode, value_at
from .simplicial import SimplicialComplex
from .upoly import UPoly


class UnboundedSet(ValueError):
    pass


@dataclass
class SubLevelProblem:
    """The set ``S`` (a formula in one variable), the filtering polynomial and ``ell``.

    A formula that is not already in closed shape is rewritten with
    :func:`make_closed`, which fails if its realization is not closed.
    ``radius`` clips ``S`` to ``[-radius, radius]``; without it ``S`` must be
    bounded.
    """

    phi: Formula
    P: UPoly
    ell: int = 0
    radius: Fraction | None = None
    S: Realization = field(init=False, repr=False)

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("ell must be >= 0")
        if not is_closed_shape(self.phi):
            self.phi = make_closed(self.phi)
        S = realization(self.phi)
        if self.radius is not None:
            R = Fraction(self.radius)
            if R <= 0:
                raise ValueError("radius must be positive")
            S = S.intersect(Realization.interval(-R, R))
        elif not S.is_bounded():
            raise UnboundedSet(f"{self.phi} has an unbounded realization; pass a radius")
        self.S = S


class CriticalValueList:
    """Strictly increasing values ``s_0 < ... < s_M`` (sentinels ``-inf``, ``+inf`` implied)."""

    def __init__(self, values: Iterable):
        self.values = sorted_points(values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        if i == -1:
            return -float("inf")
        if i == len(self.values):
            return float("inf")
        return self.values[i]

    def __repr__(self) -> str:
        return "CriticalValueList([" + ", ".join(_show(v) for v in self.values) + "])"

    def with_extra(self, extra: Iterable) -> "CriticalValueList":
        return CriticalValueList(list(self.values) + list(extra))


def _show(v) -> str:
    return v.approx(8) if isinstance(v, ThomEncoding) else str(v)


def _as_thom(v):
    return v if isinstance(v, ThomEncoding) else ThomEncoding.rational(v)


def critical_values_1d(prob: SubLevelProblem) -> CriticalValueList:
    """Values of ``P`` at the roots of ``P'`` in ``S`` and at the endpoints of ``S``."""
    S = prob.S
    if S.is_empty():
        return CriticalValueList([])
    xs = list(S.endpoints())
    dP = prob.P.derivative()
    if dP.degree > 0:
        xs += [x for x in thom_encode(dP) if S.contains(x)]
    vals = [value_at(prob.P, _as_thom(x)) for x in xs]
    return CriticalValueList(vals)


def _level_points(P: UPoly, s) -> list:
    """Real ``x`` with ``P(x) = s`` are among the returned points."""
    if not isinstance(s, ThomEncoding) or s.is_rational:
        r = Fraction(s.interval[0]) if isinstance(s, ThomEncoding) else Fraction(s)
        g = P - UPoly.constant(r)
        return thom_encode(g) if g.degree > 0 else []
    # Q(X) = Res_Y(f(Y), P(X) - Y) vanishes wherever P(X) is a root of f
    f = s._sf
    Q = resultant([UPoly([c]) for c in f.coeffs], [P, UPoly([-1])])
    return thom_encode(Q) if Q.degree > 0 else []


def _value_le(P: UPoly, x, s) -> bool:
    if isinstance(x, ThomEncoding) and not x.is_rational:
        return not s < value_at(P, x)
    xr = x.interval[0] if isinstance(x, ThomEncoding) else x
    return not s < P(xr)


def sublevel_set(prob: SubLevelProblem, s) -> Realization:
    """Exact ``{x in S : P(x) <= s}``."""
    S = prob.S
    if S.is_empty():
        return S
    pts = list(S.endpoints()) + _level_points(prob.P, s)
    return Realization.from_test(pts, lambda x: S.contains(x) and _value_le(prob.P, x, s))


def _complexes(levels: list[Realization]) -> list[SimplicialComplex]:
    """Path complexes on a common vertex set: one path per component, nested by construction."""
    verts = sorted_points(x for R in levels for x in R.endpoints())
    out = []
    for R in levels:
        sims = []
        for piece in R.pieces:
            inside = [k for k, v in enumerate(verts) if piece.contains(v)]
            sims.extend((k,) for k in inside)
            sims.extend(zip(inside, inside[1:]))
        out.append(SimplicialComplex(sims, close=False))
    return out


def finite_filtration_1d(prob: SubLevelProblem, crit: CriticalValueList) -> Filtration:
    """Simplicial filtration with one step per critical value, labelled by the values."""
    levels = [sublevel_set(prob, s) for s in crit.values]
    return Filtration(_complexes(levels), list(crit.values))


def sa_barcode_1d(prob: SubLevelProblem) -> list[Barcode]:
    """Barcodes ``B_0 .. B_ell`` of the sub-level-set filtration of ``S`` by ``P``."""
    crit = critical_values_1d(prob)
    return barcode(finite_filtration_1d(prob, crit), prob.ell)
