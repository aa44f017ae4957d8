"""Layered signatures: per-level proposition and nominal symbols."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .errors import BadName, DuplicateSymbol, LevelOutOfRange, UnknownSymbol

Kind = Literal["prop", "nom"]

_NAME = re.compile(r"[A-Za-z0-9_]+")


def _freeze(levels: Sequence[Iterable[str]]) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(sorted(set(syms))) for syms in levels)


@dataclass(frozen=True)
class Signature:
    """Symbols of an ``n``-layered language, one prop set and one nominal set per level.

    All ``2(n+1)`` sets are pairwise disjoint, so every symbol has a unique
    level and kind. Sets are kept sorted for deterministic iteration.
    """

    depth: int
    props: tuple[tuple[str, ...], ...]
    noms: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "props", _freeze(self.props))
        object.__setattr__(self, "noms", _freeze(self.noms))

    @cached_property
    def _index(self) -> dict[str, tuple[int, Kind]]:
        return {
            name: (k, kind)
            for kind, table in (("prop", self.props), ("nom", self.noms))
            for k, syms in enumerate(table)
            for name in syms
        }

    def symbol_level(self, name: str) -> tuple[int, Kind]:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def all_props(self) -> list[tuple[int, str]]:
        return [(k, p) for k, ps in enumerate(self.props) for p in ps]

    def all_noms(self) -> list[tuple[int, str]]:
        return [(k, i) for k, ns in enumerate(self.noms) for i in ns]

    def restrict(self, k: int) -> Signature:
        return restrict_signature(self, k)

    def to_dict(self) -> dict:
        return {"props": [list(p) for p in self.props], "noms": [list(n) for n in self.noms]}


def new_signature(depth: int, props: Sequence[Iterable[str]], noms: Sequence[Iterable[str]]) -> Signature:
    """Build and validate a signature of the given depth."""
    if depth < 0:
        raise ValueError("depth must be a natural number")
    props, noms = list(props), list(noms)
    if len(props) != depth + 1 or len(noms) != depth + 1:
        raise ValueError(f"expected {depth + 1} symbol sets per kind, got {len(props)} props, {len(noms)} noms")
    seen: dict[str, list[int]] = {}
    for table in (props, noms):
        for k, syms in enumerate(table):
            for name in set(syms):
                if not isinstance(name, str) or not _NAME.fullmatch(name):
                    raise BadName(name)
                seen.setdefault(name, []).append(k)
    for name in sorted(seen):
        if len(seen[name]) > 1:
            raise DuplicateSymbol(name, seen[name])
    return Signature(depth, tuple(props), tuple(noms))


def restrict_signature(sig: Signature, k: int) -> Signature:
    """The sub-signature made of levels ``0..k``."""
    if not 0 <= k <= sig.depth:
        raise LevelOutOfRange(k, sig.depth)
    return Signature(k, sig.props[: k + 1], sig.noms[: k + 1])


def symbol_level(sig: Signature, name: str) -> tuple[int, Kind]:
    return sig.symbol_level(name)
