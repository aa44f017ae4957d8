"""Standard translation into many-sorted first-order logic, and a finite-model evaluator.

For level ``k`` the target signature has sorts ``S0..Sk``, a constant of sort
``Sr`` per level-``r`` nominal, and predicates ``Dr : S0..Sr``,
``Rr : S0..Sr S0..Sr`` and ``p : S0..Sr`` for each level-``r`` proposition.
The evaluator is independent of :mod:`hierlog.semantics`; the two must agree
on every point of every valid model.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .errors import LevelMismatch, LevelOutOfRange, NameClash, SortMismatch, UnboundVariable
from .formula import And, At, Diamond, Formula, Neg, Nom, Prop
from .model import LayeredModel
from .signature import Signature

_RESERVED = re.compile(r"[DRS]\d+|x\d+|y\d+_\d+|w\d+_.*")


# ---------------------------------------------------------------- syntax


@dataclass(frozen=True)
class Var:
    name: str
    sort: int


@dataclass(frozen=True)
class Const:
    name: str
    sort: int


Term = Union[Var, Const]


class FolFormula:
    pass


@dataclass(frozen=True)
class Eq(FolFormula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Pred(FolFormula):
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class FNot(FolFormula):
    arg: FolFormula


@dataclass(frozen=True)
class FAnd(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class Exists(FolFormula):
    vars: tuple[Var, ...]
    body: FolFormula


def free_vars(f: FolFormula) -> frozenset[Var]:
    if isinstance(f, Eq):
        return frozenset(t for t in (f.left, f.right) if isinstance(t, Var))
    if isinstance(f, Pred):
        return frozenset(t for t in f.args if isinstance(t, Var))
    if isinstance(f, FNot):
        return free_vars(f.arg)
    if isinstance(f, FAnd):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Exists):
        return free_vars(f.body) - set(f.vars)
    raise TypeError(f"not a first-order formula: {f!r}")


def _term(t: Term) -> str:
    return t.name


def render_fol(f: FolFormula, top: bool = True) -> str:
    """Readable text, e.g. ``D1(x0, idle) ∧ (closed = x0)``."""
    if isinstance(f, Eq):
        return f"({_term(f.left)} = {_term(f.right)})"
    if isinstance(f, Pred):
        return f"{f.name}({', '.join(_term(a) for a in f.args)})"
    if isinstance(f, FNot):
        return "¬" + render_fol(f.arg, top=False)
    if isinstance(f, FAnd):
        s = f"{render_fol(f.left, top=False)} ∧ {render_fol(f.right, top=False)}"
        return s if top else f"({s})"
    if isinstance(f, Exists):
        binders = ", ".join(f"{v.name}:S{v.sort}" for v in f.vars)
        s = f"∃{binders} ({render_fol(f.body)})"
        return s if top else f"({s})"
    raise TypeError(f"not a first-order formula: {f!r}")


# ---------------------------------------------------------------- signature and model


@dataclass(frozen=True)
class FolSignature:
    sorts: tuple[str, ...]
    constants: Mapping[str, int]
    predicates: Mapping[str, tuple[int, ...]]

    __hash__ = None  # type: ignore[assignment]


@dataclass
class FolModel:
    signature: FolSignature
    carriers: tuple[tuple[str, ...], ...]
    constants: dict[str, str]
    predicates: dict[str, frozenset[tuple[str, ...]]]
    _carrier_sets: tuple[frozenset[str], ...] = field(init=False, repr=False)

    def __post_init__(self):
        self._carrier_sets = tuple(frozenset(c) for c in self.carriers)


def translate_signature(sig: Signature, k: int) -> FolSignature:
    if not 0 <= k <= sig.depth:
        raise LevelOutOfRange(k, sig.depth)
    constants: dict[str, int] = {}
    predicates: dict[str, tuple[int, ...]] = {}
    for r in range(k + 1):
        predicates[f"D{r}"] = tuple(range(r + 1))
        predicates[f"R{r}"] = tuple(range(r + 1)) * 2
    for r in range(k + 1):
        for name in sig.noms[r]:
            if _RESERVED.fullmatch(name):
                raise NameClash(f"nominal {name!r} collides with a reserved first-order name")
            constants[name] = r
        for name in sig.props[r]:
            if _RESERVED.fullmatch(name):
                raise NameClash(f"proposition {name!r} collides with a reserved first-order name")
            predicates[name] = tuple(range(r + 1))
    return FolSignature(tuple(f"S{r}" for r in range(k + 1)), constants, predicates)


def translate_model(M: LayeredModel, k: int) -> FolModel:
    M.require_valid()
    fs = translate_signature(M.sig, k)
    preds: dict[str, frozenset] = {}
    for r in range(k + 1):
        preds[f"D{r}"] = M.domain_at(r)
        preds[f"R{r}"] = frozenset(s + t for s, t in M.rels[r])
        for p in M.sig.props[r]:
            preds[p] = frozenset(
                prefix + (w,) for (q, prefix), ws in M.propval.items() if q == p for w in ws
            )
    return FolModel(
        signature=fs,
        carriers=tuple(tuple(sorted(M.worlds[r])) for r in range(k + 1)),
        constants={i: M.nomval[i] for i in fs.constants},
        predicates=preds,
    )


# ---------------------------------------------------------------- sentence translation


def standard_vars(k: int) -> tuple[Var, ...]:
    return tuple(Var(f"x{r}", r) for r in range(k + 1))


def standard_translation(f: Formula, k: int, vars: Sequence[Term] | None = None) -> FolFormula:
    """``ST^k`` of ``f`` with the point held by ``vars`` (default ``x0..xk``).

    Bound variables are named ``y<sort>_<n>`` with ``n`` counting diamonds
    from 1 in pre-order, so the output is stable for a given input.
    """
    if f.level > k:
        raise LevelMismatch(f"formula of level {f.level} translated at level {k}")
    vars = tuple(vars) if vars is not None else standard_vars(k)
    if len(vars) != k + 1:
        raise ValueError(f"expected {k + 1} terms, got {len(vars)}")
    counter = itertools.count(1)

    def st(g: Formula, xs: tuple[Term, ...]) -> FolFormula:
        if isinstance(g, Prop):
            return Pred(g.name, xs[: g.lvl + 1])
        if isinstance(g, Nom):
            return Eq(Const(g.name, g.lvl), xs[g.lvl])
        if isinstance(g, Neg):
            return FNot(st(g.arg, xs))
        if isinstance(g, And):
            return FAnd(st(g.left, xs), st(g.right, xs))
        if isinstance(g, At):
            named = xs[: g.lvl] + (Const(g.nom, g.lvl),)
            return FAnd(Pred(f"D{g.lvl}", named), st(g.arg, named))
        if isinstance(g, Diamond):
            n = next(counter)
            ys = tuple(Var(f"y{r}_{n}", r) for r in range(g.lvl + 1))
            return Exists(
                ys,
                FAnd(
                    Pred(f"D{g.lvl}", ys),
                    FAnd(Pred(f"R{g.lvl}", xs[: g.lvl + 1] + ys), st(g.arg, ys)),
                ),
            )
        raise TypeError(f"not a formula: {g!r}")

    return st(f, vars)


# ---------------------------------------------------------------- evaluation


class _FolEvaluator:
    def __init__(self, FM: FolModel):
        self.FM = FM
        self.fv: dict[int, tuple[Var, ...]] = {}
        self.memo: dict[tuple, bool] = {}

    def free(self, f: FolFormula) -> tuple[Var, ...]:
        got = self.fv.get(id(f))
        if got is None:
            got = self.fv[id(f)] = tuple(sorted(free_vars(f), key=lambda v: v.name))
        return got

    def term(self, t: Term, env: Mapping[Var, str]) -> str:
        if isinstance(t, Var):
            if t not in env:
                raise UnboundVariable(t.name)
            return env[t]
        if t.name not in self.FM.constants:
            raise SortMismatch(f"constant {t.name!r} is not interpreted")
        if self.FM.signature.constants[t.name] != t.sort:
            raise SortMismatch(f"constant {t.name!r} used at sort S{t.sort}")
        return self.FM.constants[t.name]

    def eval(self, f: FolFormula, env: Mapping[Var, str]) -> bool:
        if isinstance(f, (Exists, FAnd, FNot)):
            key = (id(f),) + tuple(env[v] for v in self.free(f))
            hit = self.memo.get(key)
            if hit is None:
                hit = self.memo[key] = self._eval(f, env)
            return hit
        return self._eval(f, env)

    def _eval(self, f: FolFormula, env: Mapping[Var, str]) -> bool:
        if isinstance(f, Eq):
            if f.left.sort != f.right.sort:
                raise SortMismatch(f"equality between sorts S{f.left.sort} and S{f.right.sort}")
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Pred):
            arity = self.FM.signature.predicates.get(f.name)
            if arity is None:
                raise SortMismatch(f"unknown predicate {f.name!r}")
            if tuple(a.sort for a in f.args) != arity:
                raise SortMismatch(f"{f.name} applied to sorts {[a.sort for a in f.args]}, expects {list(arity)}")
            return tuple(self.term(a, env) for a in f.args) in self.FM.predicates[f.name]
        if isinstance(f, FNot):
            return not self.eval(f.arg, env)
        if isinstance(f, FAnd):
            return self.eval(f.left, env) and self.eval(f.right, env)
        if isinstance(f, Exists):
            carriers = [self.FM.carriers[v.sort] for v in f.vars]
            for values in itertools.product(*carriers):
                inner = dict(env)
                inner.update(zip(f.vars, values))
                if self.eval(f.body, inner):
                    return True
            return False
        raise TypeError(f"not a first-order formula: {f!r}")


def eval_fol(FM: FolModel, assignment: Mapping, f: FolFormula) -> bool:
    """Tarskian truth of ``f`` in ``FM`` under ``assignment``.

    ``assignment`` maps variables (``Var`` objects or their names) to carrier
    elements of the variable's sort.
    """
    by_name = {(v.name if isinstance(v, Var) else v): w for v, w in assignment.items()}
    env: dict[Var, str] = {}
    for v in free_vars(f):
        if v.name not in by_name:
            raise UnboundVariable(v.name)
        w = by_name[v.name]
        if v.sort >= len(FM.carriers) or w not in FM._carrier_sets[v.sort]:
            raise SortMismatch(f"{v.name} := {w!r} is not an element of S{v.sort}")
        env[v] = w
    return _FolEvaluator(FM).eval(f, env)


def point_assignment(point) -> dict[str, str]:
    return {f"x{r}": w for r, w in enumerate(point)}
