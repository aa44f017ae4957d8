"""SMT-LIB 2.6 serialisation of translated signatures, sentences and finite models."""

from __future__ import annotations

import re
from typing import Optional

from .fol import Eq, Exists, FAnd, FNot, FolFormula, FolModel, FolSignature, Pred, free_vars

_SIMPLE = re.compile(r"[A-Za-z_~!@$%^&*+=<>.?/-][A-Za-z0-9_~!@$%^&*+=<>.?/-]*")
_KEYWORDS = {"and", "or", "not", "forall", "exists", "let", "assert", "true", "false", "distinct", "ite", "par", "_", "!", "as"}


def symbol(name: str) -> str:
    if _SIMPLE.fullmatch(name) and name not in _KEYWORDS:
        return name
    return f"|{name}|"


def element(sort: int, world: str) -> str:
    """Name of the constant standing for carrier element ``world`` of sort ``S<sort>``."""
    return symbol(f"w{sort}_{world}")


def sexpr(f: FolFormula) -> str:
    if isinstance(f, Eq):
        return f"(= {symbol(f.left.name)} {symbol(f.right.name)})"
    if isinstance(f, Pred):
        return f"({symbol(f.name)} {' '.join(symbol(a.name) for a in f.args)})"
    if isinstance(f, FNot):
        return f"(not {sexpr(f.arg)})"
    if isinstance(f, FAnd):
        return f"(and {sexpr(f.left)} {sexpr(f.right)})"
    if isinstance(f, Exists):
        return f"(exists ({_binders(f.vars)}) {sexpr(f.body)})"
    raise TypeError(f"not a first-order formula: {f!r}")


def _binders(vs) -> str:
    return " ".join(f"({symbol(v.name)} S{v.sort})" for v in vs)


def _disjunction(parts: list[str]) -> str:
    if not parts:
        return "false"
    if len(parts) == 1:
        return parts[0]
    return f"(or {' '.join(parts)})"


def _conjunction(parts: list[str]) -> str:
    if not parts:
        return "true"
    if len(parts) == 1:
        return parts[0]
    return f"(and {' '.join(parts)})"


def _model_axioms(FS: FolSignature, FM: FolModel) -> list[str]:
    lines = ["; finite model"]
    for r, carrier in enumerate(FM.carriers):
        for w in carrier:
            lines.append(f"(declare-const {element(r, w)} S{r})")
        if len(carrier) > 1:
            lines.append(f"(assert (distinct {' '.join(element(r, w) for w in carrier)}))")
        v = f"v{r}"
        lines.append(
            f"(assert (forall (({v} S{r})) {_disjunction([f'(= {v} {element(r, w)})' for w in carrier])}))"
        )
    for name, sort in FS.constants.items():
        lines.append(f"(assert (= {symbol(name)} {element(sort, FM.constants[name])}))")
    for name, arity in FS.predicates.items():
        vs = [f"v{j}" for j in range(len(arity))]
        binders = " ".join(f"({v} S{s})" for v, s in zip(vs, arity))
        cases = [
            _conjunction([f"(= {v} {element(s, w)})" for v, s, w in zip(vs, arity, tup)])
            for tup in sorted(FM.predicates[name])
        ]
        lines.append(
            f"(assert (forall ({binders}) (= ({symbol(name)} {' '.join(vs)}) {_disjunction(cases)})))"
        )
    return lines


def export_smtlib(FS: FolSignature, f: FolFormula, FM: Optional[FolModel] = None) -> str:
    """An SMT-LIB 2.6 script declaring ``FS`` and asserting ``f``.

    Free variables of ``f`` are closed universally. With ``FM`` the script
    also pins every sort, constant and predicate to the finite model.
    """
    lines: list[str] = []
    for r, _ in enumerate(FS.sorts):
        lines.append(f"(declare-sort S{r} 0)")
    for name, sort in FS.constants.items():
        lines.append(f"(declare-const {symbol(name)} S{sort})")
    for name, arity in FS.predicates.items():
        lines.append(f"(declare-fun {symbol(name)} ({' '.join(f'S{s}' for s in arity)}) Bool)")
    if FM is not None:
        lines.extend(_model_axioms(FS, FM))
    body = sexpr(f)
    fv = sorted(free_vars(f), key=lambda v: v.name)
    if fv:
        body = f"(forall ({_binders(fv)}) {body})"
    lines.append(f"(assert {body})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
