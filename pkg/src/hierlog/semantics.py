"""Satisfaction of layered hybrid formulas at domain points.

Each node is evaluated at the prefix of the point matching its own level,
which is how lower-level (basic) formulas delegate to the lower satisfaction
relation. The diamond quantifies over whole target tuples of ``R_k``, so
transitions may change ancestor components.
"""

from __future__ import annotations

from .errors import LevelMismatch, PointOutsideDomain
from .formula import And, At, Diamond, Formula, Neg, Nom, Prop
from .model import LayeredModel, WorldTuple


class _Evaluator:
    def __init__(self, M: LayeredModel):
        self.M = M
        self.memo: dict[tuple[WorldTuple, int], bool] = {}

    def sat(self, t: WorldTuple, f: Formula) -> bool:
        key = (t, id(f))
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._sat(t, f)
        return hit

    def _sat(self, t: WorldTuple, f: Formula) -> bool:
        M = self.M
        if isinstance(f, Prop):
            return M.holds(f.name, t[: f.lvl + 1])
        if isinstance(f, Nom):
            named = M.named(f.name, t[: f.lvl])
            return t[f.lvl] == named[-1] and named in M.domain_at(f.lvl)
        if isinstance(f, Neg):
            return not self.sat(t, f.arg)
        if isinstance(f, And):
            return self.sat(t, f.left) and self.sat(t, f.right)
        if isinstance(f, At):
            named = M.named(f.nom, t[: f.lvl])
            return named in M.domain_at(f.lvl) and self.sat(named, f.arg)
        if isinstance(f, Diamond):
            return any(self.sat(v, f.arg) for v in M.successors(f.lvl, t[: f.lvl + 1]))
        raise TypeError(f"not a formula: {f!r}")


def _check(M: LayeredModel, point, f: Formula) -> WorldTuple:
    point = tuple(point)
    k = len(point) - 1
    if k < 0 or k > M.depth or point not in M.domain_at(k):
        raise PointOutsideDomain(point)
    if f.level > k:
        raise LevelMismatch(f"formula of level {f.level} evaluated at level {k}")
    return point


def satisfies(M: LayeredModel, point, f: Formula) -> bool:
    """``M_k, w_0..w_k |= f`` where ``k = len(point) - 1``."""
    point = _check(M, point, f)
    return _Evaluator(M).sat(point, f)


def satisfying_points(M: LayeredModel, f: Formula, k: int) -> list[WorldTuple]:
    """Points of ``D_k`` where ``f`` holds, lexicographically ordered."""
    if f.level > k:
        raise LevelMismatch(f"formula of level {f.level} evaluated at level {k}")
    ev = _Evaluator(M)
    return [t for t in M.sorted_domain(k) if ev.sat(t, f)]


def valid_in_model(M: LayeredModel, f: Formula, k: int) -> bool:
    return len(satisfying_points(M, f, k)) == len(M.domain_at(k))


class Checker:
    """Reusable evaluator sharing its memo across queries on one model."""

    def __init__(self, M: LayeredModel):
        self._ev = _Evaluator(M)
        self._alive: dict[int, Formula] = {}  # memo keys are ids; pin the formulas
        self.M = M

    def __call__(self, point, f: Formula) -> bool:
        self._alive.setdefault(id(f), f)
        return self._ev.sat(_check(self.M, point, f), f)
