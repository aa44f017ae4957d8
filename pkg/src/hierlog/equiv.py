"""Layered and hierarchical bisimulations, simulations and refinement.

A layered family relates ``D_k`` to ``D'_k`` independently at every level.
A hierarchical relation ``B ⊆ D_n × D'_n`` is checked through the family it
induces, ``B|_0, ..., B|_n``: it is a hierarchical (bi)simulation exactly
when that family is a layered one. This keeps invariance for formulas that
mix levels, since related tuples then always have related prefixes.

Nominal transfer (ATOM 2.i) only constrains nominals whose substituted tuple
lies in the domain; for bisimulations it applies when either side does, for
simulations when the left side does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, NamedTuple, Optional

from .errors import NotHierarchical, SignatureMismatch
from .model import LayeredModel, Pair, WorldTuple, fmt_pair, fmt_tuple, is_hierarchical, restrict_model, restrict_relation
from .signature import restrict_signature

Kind = Literal["layered", "hierarchical"]


@dataclass(frozen=True)
class RelationFamily:
    """Candidate or computed relations between two models.

    For ``kind == "layered"`` ``levels[k]`` is ``B_k``. For
    ``kind == "hierarchical"`` ``levels`` holds the single full-length
    relation ``B``; :meth:`induced` gives its restrictions.
    """

    kind: Kind
    levels: tuple[frozenset[Pair], ...]

    def __post_init__(self):
        if self.kind not in ("layered", "hierarchical"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        levels = tuple(frozenset((tuple(a), tuple(b)) for a, b in lv) for lv in self.levels)
        if self.kind == "hierarchical" and len(levels) != 1:
            raise ValueError("a hierarchical family holds exactly one relation")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def layered(cls, levels: Iterable[Iterable[Pair]]) -> RelationFamily:
        return cls("layered", tuple(levels))

    @classmethod
    def hierarchical(cls, pairs: Iterable[Pair]) -> RelationFamily:
        return cls("hierarchical", (pairs,))

    @classmethod
    def identity(cls, M: LayeredModel, kind: Kind = "layered") -> RelationFamily:
        if kind == "hierarchical":
            return cls.hierarchical((t, t) for t in M.domain_at(M.depth))
        return cls.layered([(t, t) for t in M.domain_at(k)] for k in range(M.depth + 1))

    @property
    def pairs(self) -> frozenset[Pair]:
        return self.levels[-1]

    def induced(self, depth: int) -> tuple[frozenset[Pair], ...]:
        if self.kind == "layered":
            return self.levels
        return tuple(restrict_relation(self.pairs, k) for k in range(depth)) + (self.pairs,)

    def truncate(self, k: int) -> RelationFamily:
        """``B[k]``, the first ``k+1`` levels of a layered family."""
        if self.kind != "layered":
            raise ValueError("only layered families can be truncated")
        return RelationFamily.layered(self.levels[: k + 1])

    def inverse(self) -> RelationFamily:
        return RelationFamily(self.kind, tuple(frozenset((b, a) for a, b in lv) for lv in self.levels))

    def is_empty(self) -> bool:
        return not any(self.levels)

    def __len__(self):
        return sum(len(lv) for lv in self.levels)


@dataclass(frozen=True)
class ClauseViolation:
    clause: str
    level: int
    pair: Pair

    def __str__(self):
        return f"{self.clause} violated at {fmt_pair(self.pair)}"


class Verdict(NamedTuple):
    ok: bool
    violation: Optional[ClauseViolation] = None

    def __bool__(self):
        return self.ok


class Refinement(NamedTuple):
    ok: bool
    level: Optional[int] = None
    witness: Optional[WorldTuple] = None

    def __bool__(self):
        return self.ok

    def reason(self) -> str:
        if self.ok:
            return "refines"
        return f"non-total at level {self.level}: {fmt_tuple(self.witness)} has no simulating tuple"


# ---------------------------------------------------------------- clause tests


class _Clauses:
    """Clause tests for one level of a pair of models.

    ``sim`` selects the one-directional (simulation) reading.
    """

    def __init__(self, M: LayeredModel, N: LayeredModel, k: int, sim: bool):
        self.M, self.N, self.k, self.sim = M, N, k, sim
        self.props = M.sig.props[k]
        self.noms = M.sig.noms[k]
        self.DM = M.domain_at(k)
        self.DN = N.domain_at(k)

    def _named_here(self, model, D, i, w):
        return w[self.k] == model.nomval[i] and model.named(i, w[: self.k]) in D

    def static(self, w, v) -> Optional[str]:
        """ATOM 1 and 2.ii, which do not depend on the relation."""
        k = self.k
        for p in self.props:
            a, b = self.M.holds(p, w), self.N.holds(p, v)
            if (a and not b) if self.sim else (a != b):
                return f"ATOM_{k} 1.{'i' if k == 0 else 'ii'}"
        for i in self.noms:
            a, b = self._named_here(self.M, self.DM, i, w), self._named_here(self.N, self.DN, i, v)
            if (a and not b) if self.sim else (a != b):
                return f"ATOM_{k} 2.ii"
        return None

    def dynamic(self, w, v, B) -> Optional[str]:
        """ATOM 2.i, ZIG and (for bisimulations) ZAG against the relation ``B``."""
        k = self.k
        for i in self.noms:
            t, u = self.M.named(i, w[:k]), self.N.named(i, v[:k])
            relevant = t in self.DM if self.sim else (t in self.DM or u in self.DN)
            if relevant and (t, u) not in B:
                return f"ATOM_{k} 2.i"
        right = self.N.successors(k, v)
        for w2 in self.M.successors(k, w):
            if not any((w2, v2) in B for v2 in right):
                return f"ZIG_{k}"
        if not self.sim:
            left = self.M.successors(k, w)
            for v2 in right:
                if not any((w2, v2) in B for w2 in left):
                    return f"ZAG_{k}"
        return None


def _prepare(M: LayeredModel, N: LayeredModel, kind: Kind):
    if M.sig != N.sig:
        raise SignatureMismatch("models are over different signatures")
    M.require_valid()
    N.require_valid()
    if kind == "hierarchical":
        for which, X in (("left model", M), ("right model", N)):
            verdict = is_hierarchical(X)
            if not verdict:
                raise NotHierarchical(which, verdict.level, fmt_pair(verdict.pair))
    elif kind != "layered":
        raise ValueError(f"unknown kind {kind!r}")


def _check_family(M, N, levels, sim: bool) -> Verdict:
    for k, B in enumerate(levels):
        cl = _Clauses(M, N, k, sim)
        for w, v in sorted(B):
            if w not in cl.DM or v not in cl.DN:
                return Verdict(False, ClauseViolation(f"DOMAIN_{k}", k, (w, v)))
        for w, v in sorted(B):
            clause = cl.static(w, v) or cl.dynamic(w, v, B)
            if clause:
                return Verdict(False, ClauseViolation(clause, k, (w, v)))
    return Verdict(True)


def _check(M, N, family: RelationFamily, kind: Optional[Kind], sim: bool) -> Verdict:
    kind = kind or family.kind
    if kind != family.kind:
        raise ValueError(f"family is {family.kind}, asked to check as {kind}")
    _prepare(M, N, kind)
    n = M.depth
    if kind == "layered":
        if len(family.levels) != n + 1:
            raise ValueError(f"layered family needs {n + 1} levels, got {len(family.levels)}")
        return _check_family(M, N, family.levels, sim)
    for w, v in sorted(family.pairs):
        if len(w) != n + 1 or len(v) != n + 1:
            return Verdict(False, ClauseViolation(f"DOMAIN_{n}", n, (w, v)))
    return _check_family(M, N, family.induced(n), sim)


def check_bisimulation(M: LayeredModel, N: LayeredModel, family: RelationFamily, kind: Optional[Kind] = None) -> Verdict:
    """Whether ``family`` is a bisimulation between ``M`` and ``N``; the first broken clause otherwise."""
    return _check(M, N, family, kind, sim=False)


def check_simulation(M: LayeredModel, N: LayeredModel, family: RelationFamily, kind: Optional[Kind] = None) -> Verdict:
    """Whether ``family`` is a simulation from ``M`` to ``N``."""
    return _check(M, N, family, kind, sim=True)


# ---------------------------------------------------------------- greatest fixpoints


def _largest_level(M, N, k: int, sim: bool) -> frozenset[Pair]:
    cl = _Clauses(M, N, k, sim)
    B = {(w, v) for w in sorted(cl.DM) for v in sorted(cl.DN) if cl.static(w, v) is None}
    while True:
        dead = [p for p in sorted(B) if cl.dynamic(p[0], p[1], B)]
        if not dead:
            return frozenset(B)
        B.difference_update(dead)


def _largest_hierarchical(M, N, sim: bool) -> frozenset[Pair]:
    n = M.depth
    clauses = [_Clauses(M, N, k, sim) for k in range(n + 1)]
    B = {
        (w, v)
        for w in M.sorted_domain(n)
        for v in N.sorted_domain(n)
        if all(cl.static(w[: k + 1], v[: k + 1]) is None for k, cl in enumerate(clauses))
    }
    while True:
        induced = [{(w[: k + 1], v[: k + 1]) for w, v in B} for k in range(n + 1)]
        dead = [
            {p for p in sorted(induced[k]) if cl.dynamic(p[0], p[1], induced[k])}
            for k, cl in enumerate(clauses)
        ]
        if not any(dead):
            return frozenset(B)
        B = {
            (w, v)
            for w, v in B
            if not any((w[: k + 1], v[: k + 1]) in dead[k] for k in range(n + 1))
        }


def _largest(M, N, kind: Kind, sim: bool) -> RelationFamily:
    _prepare(M, N, kind)
    if kind == "hierarchical":
        return RelationFamily.hierarchical(_largest_hierarchical(M, N, sim))
    return RelationFamily.layered(_largest_level(M, N, k, sim) for k in range(M.depth + 1))


def largest_bisimulation(M: LayeredModel, N: LayeredModel, kind: Kind = "layered") -> RelationFamily:
    """The union of all bisimulations of the given kind between ``M`` and ``N``."""
    return _largest(M, N, kind, sim=False)


def largest_simulation(M: LayeredModel, N: LayeredModel, kind: Kind = "layered") -> RelationFamily:
    """The union of all simulations of the given kind from ``M`` to ``N``."""
    return _largest(M, N, kind, sim=True)


# ---------------------------------------------------------------- totality and refinement


def totality_gap(M: LayeredModel, family: RelationFamily) -> Optional[tuple[int, WorldTuple]]:
    """First ``(level, tuple)`` of ``M`` left unrelated by ``family``, or None if left-total."""
    if family.kind == "hierarchical":
        checks = [(M.depth, family.pairs)]
    else:
        checks = list(enumerate(family.levels))
    for k, B in checks:
        covered = {w for w, _ in B}
        for t in M.sorted_domain(k):
            if t not in covered:
                return k, t
    return None


def l_simulates(M: LayeredModel, N: LayeredModel) -> bool:
    """``M ⇀_l N``: some layered simulation from ``M`` to ``N`` is total at every level."""
    return totality_gap(M, largest_simulation(M, N, "layered")) is None


def h_simulates(M: LayeredModel, N: LayeredModel) -> bool:
    """``M ⇀_h N``: some hierarchical simulation from ``M`` to ``N`` is total on ``D_n``."""
    return totality_gap(M, largest_simulation(M, N, "hierarchical")) is None


def refines(M: LayeredModel, N: LayeredModel, mode: Kind = "hierarchical") -> Refinement:
    """Whether the deeper model ``N`` refines ``M`` in the given mode.

    ``N``'s signature cut at ``M``'s depth must equal ``M``'s; then ``N``
    restricted to that depth has to simulate ``M`` totally.
    """
    n = M.depth
    if N.depth < n or restrict_signature(N.sig, n) != M.sig:
        raise SignatureMismatch(f"signature of the refined model cut at level {n} differs from the abstract one")
    M.require_valid()
    N.require_valid()
    if mode == "hierarchical":
        for which, X in (("abstract model", M), ("concrete model", N)):
            verdict = is_hierarchical(X)
            if not verdict:
                raise NotHierarchical(which, verdict.level, fmt_pair(verdict.pair))
    Nn = restrict_model(N, n)
    gap = totality_gap(M, largest_simulation(M, Nn, mode))
    if gap is None:
        return Refinement(True)
    return Refinement(False, gap[0], gap[1])
