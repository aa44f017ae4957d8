"""Finite n-layered Kripke models, their restrictions and the hierarchy test.

A world is identified by its id together with its level; since the level of a
tuple component is its position, tuples are plain ``tuple[str, ...]``.
The domain ``D`` is stored as full-length tuples and every ``D_k`` is derived
from it by prefix projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import InvalidModel, LevelOutOfRange
from .signature import Signature, restrict_signature

WorldTuple = tuple  # tuple[str, ...], component r lives at level r
Pair = tuple  # (WorldTuple, WorldTuple)


def fmt_tuple(t) -> str:
    return "(" + ",".join(t) + ")"


def fmt_pair(pair) -> str:
    return f"({fmt_tuple(pair[0])},{fmt_tuple(pair[1])})"


@dataclass(frozen=True)
class ModelViolation:
    level: int
    invariant: str
    witness: str

    def __str__(self):
        return f"LEVEL {self.level}: {self.invariant}: {self.witness}"


class HierarchyVerdict(NamedTuple):
    ok: bool
    level: int | None = None
    pair: Pair | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=True)
class LayeredModel:
    """``M = (W, D, R, V)`` over a signature of depth ``n``.

    ``propval`` maps ``(p, prefix)`` to the worlds of level ``k`` where ``p``
    holds below ``prefix`` (a tuple of length ``k``; empty for ``k = 0``).
    Missing entries mean the empty set.
    """

    sig: Signature
    worlds: tuple[frozenset[str], ...]
    domain: frozenset[WorldTuple]
    rels: tuple[frozenset[Pair], ...]
    propval: Mapping[tuple[str, WorldTuple], frozenset[str]] = field(default_factory=dict)
    nomval: Mapping[str, str] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(frozenset(ws) for ws in self.worlds))
        object.__setattr__(self, "domain", frozenset(tuple(t) for t in self.domain))
        object.__setattr__(
            self,
            "rels",
            tuple(frozenset((tuple(s), tuple(t)) for s, t in rel) for rel in self.rels),
        )
        pv = {}
        for (p, prefix), ws in self.propval.items():
            key = (p, tuple(prefix))
            pv[key] = pv.get(key, frozenset()) | frozenset(ws)
        object.__setattr__(self, "propval", pv)
        object.__setattr__(self, "nomval", dict(self.nomval))

    @property
    def depth(self) -> int:
        return self.sig.depth

    @cached_property
    def _domains(self) -> tuple[frozenset[WorldTuple], ...]:
        return tuple(restrict_predicate(self.domain, k) for k in range(self.depth + 1))

    def domain_at(self, k: int) -> frozenset[WorldTuple]:
        """``D_k``, the length-``k+1`` prefixes of the domain."""
        if not 0 <= k <= self.depth:
            raise LevelOutOfRange(k, self.depth)
        return self._domains[k]

    def sorted_domain(self, k: int) -> list[WorldTuple]:
        return sorted(self.domain_at(k))

    @cached_property
    def _succ(self) -> tuple[dict[WorldTuple, tuple[WorldTuple, ...]], ...]:
        out = []
        for rel in self.rels:
            succ: dict[WorldTuple, list] = {}
            for s, t in rel:
                succ.setdefault(s, []).append(t)
            out.append({s: tuple(sorted(ts)) for s, ts in succ.items()})
        return tuple(out)

    def successors(self, k: int, t: WorldTuple) -> tuple[WorldTuple, ...]:
        """Targets of ``R_k`` moves leaving ``t``, in lexicographic order."""
        return self._succ[k].get(tuple(t), ())

    def prop_worlds(self, p: str, prefix: WorldTuple) -> frozenset[str]:
        return self.propval.get((p, tuple(prefix)), frozenset())

    def holds(self, p: str, t: WorldTuple) -> bool:
        """``t[-1]`` belongs to the valuation of ``p`` under ``t[:-1]``."""
        return t[-1] in self.propval.get((p, tuple(t[:-1])), ())

    def named(self, i: str, prefix: WorldTuple) -> WorldTuple:
        """``prefix`` extended with the denotation of nominal ``i``."""
        return tuple(prefix) + (self.nomval[i],)

    @cached_property
    def violations(self) -> list[ModelViolation]:
        return validate_model(self)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def require_valid(self):
        if self.violations:
            raise InvalidModel(self.violations)

    def restrict(self, k: int) -> LayeredModel:
        return restrict_model(self, k)


def validate_model(M: LayeredModel) -> list[ModelViolation]:
    """Every invariant of ``M`` that fails, with a witness. Empty means valid."""
    n = M.depth
    sig = M.sig
    out: list[ModelViolation] = []

    def bad(level, invariant, witness):
        out.append(ModelViolation(level, invariant, witness))

    if len(M.worlds) != n + 1:
        bad(0, "LevelCount", f"{len(M.worlds)} world sets for depth {n}")
    if len(M.rels) != n + 1:
        bad(0, "LevelCount", f"{len(M.rels)} relations for depth {n}")
    worlds = [M.worlds[k] if k < len(M.worlds) else frozenset() for k in range(n + 1)]

    full = []
    for t in sorted(M.domain):
        if len(t) != n + 1:
            bad(min(len(t), n + 1) - 1 if t else 0, "BadTupleLength", fmt_tuple(t))
            continue
        full.append(t)
        for k, w in enumerate(t):
            if w not in worlds[k]:
                bad(k, "UnregisteredWorld", f"{w} in {fmt_tuple(t)}")
    # projection condition: every world is the last component of some D_k tuple
    for k in range(n + 1):
        used = {t[k] for t in full}
        for w in sorted(worlds[k] - used):
            bad(k, "ProjectionFailure", w)

    domains = [restrict_predicate(full, k) for k in range(n + 1)]
    for k, rel in enumerate(M.rels[: n + 1]):
        for s, t in sorted(rel):
            if len(s) != k + 1 or len(t) != k + 1:
                bad(k, "BadTupleLength", fmt_pair((s, t)))
            elif s not in domains[k] or t not in domains[k]:
                bad(k, "RelationOutsideDomain", fmt_pair((s, t)))

    for (p, prefix), ws in sorted(M.propval.items()):
        if p not in sig or sig.symbol_level(p)[1] != "prop":
            bad(len(prefix), "UnknownProposition", p)
            continue
        k = sig.symbol_level(p)[0]
        if len(prefix) != k:
            bad(k, "BadTupleLength", f"{p} at prefix {fmt_tuple(prefix)}")
            continue
        if k > 0 and prefix not in domains[k - 1]:
            bad(k, "PropvalOutsideDomain", f"{p} at prefix {fmt_tuple(prefix)}")
        for w in sorted(set(ws) - worlds[k]):
            bad(k, "UnregisteredWorld", f"{w} in valuation of {p}")

    for k, noms in enumerate(sig.noms):
        for i in noms:
            if i not in M.nomval:
                bad(k, "NominalUndefined", i)
            elif M.nomval[i] not in worlds[k]:
                bad(k, "NominalOutsideLevel", f"{i} -> {M.nomval[i]}")
    for i in sorted(M.nomval):
        if i not in sig or sig.symbol_level(i)[1] != "nom":
            bad(0, "UnknownNominal", i)
    return out


def restrict_predicate(D: Iterable[WorldTuple], k: int) -> frozenset[WorldTuple]:
    """``D|_k``: the length-``k+1`` prefixes of the tuples in ``D``."""
    D = list(D)
    if k < 0 or any(len(t) < k + 1 for t in D):
        raise LevelOutOfRange(k, min((len(t) for t in D), default=0) - 1)
    return frozenset(tuple(t[: k + 1]) for t in D)


def restrict_relation(R: Iterable[Pair], k: int) -> frozenset[Pair]:
    """``R|_k``: both sides of every pair cut down to their first ``k+1`` components."""
    R = list(R)
    if k < 0 or any(min(len(s), len(t)) < k + 1 for s, t in R):
        raise LevelOutOfRange(k, min((min(len(s), len(t)) for s, t in R), default=0) - 1)
    return frozenset((tuple(s[: k + 1]), tuple(t[: k + 1])) for s, t in R)


def restrict_model(M: LayeredModel, k: int) -> LayeredModel:
    """The ``k``-restriction ``M_k`` of ``M``."""
    if not 0 <= k <= M.depth:
        raise LevelOutOfRange(k, M.depth)
    sig = restrict_signature(M.sig, k)
    keep = set(sig._index)
    return LayeredModel(
        sig=sig,
        worlds=M.worlds[: k + 1],
        domain=M.domain_at(k),
        rels=M.rels[: k + 1],
        propval={key: ws for key, ws in M.propval.items() if key[0] in keep},
        nomval={i: w for i, w in M.nomval.items() if i in keep},
    )


def is_hierarchical(M: LayeredModel) -> HierarchyVerdict:
    """Check ``R_k|_{k-1} = R_{k-1}`` for every ``k >= 1``.

    On failure the verdict carries the lowest offending level ``k`` and a pair
    from the symmetric difference, preferring one of ``R_k|_{k-1}``.
    """
    M.require_valid()
    for k in range(1, M.depth + 1):
        projected = restrict_relation(M.rels[k], k - 1)
        lower = M.rels[k - 1]
        if projected != lower:
            extra = sorted(projected - lower)
            missing = sorted(lower - projected)
            return HierarchyVerdict(False, k, (extra or missing)[0])
    return HierarchyVerdict(True)
