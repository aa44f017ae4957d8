"""Random signatures, models and formulas for property testing.

Everything takes an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .formula import And, At, Diamond, Formula, Neg, Nom, Prop
from .model import LayeredModel, restrict_relation
from .signature import Signature, new_signature


def random_signature(rng: random.Random, depth: int, max_props: int = 2, max_noms: int = 2) -> Signature:
    """Every level gets at least one symbol so strict formulas exist at each level."""
    props, noms = [], []
    for k in range(depth + 1):
        np_, nn = rng.randint(0, max_props), rng.randint(0, max_noms)
        if np_ + nn == 0:
            np_ = 1
        props.append([f"p{'abcdefgh'[j]}{k}" for j in range(np_)])
        noms.append([f"n{'abcdefgh'[j]}{k}" for j in range(nn)])
    return new_signature(depth, props, noms)


def _world(k: int, j: int) -> str:
    return f"{'uvwxyz'[k % 6]}{j}" if k < 6 else f"l{k}_{j}"


def random_domain(rng: random.Random, depth: int, max_worlds: int = 3, density: float = 0.35) -> set:
    sizes = [rng.randint(1, max_worlds) for _ in range(depth + 1)]
    worlds = [[_world(k, j) for j in range(sizes[k])] for k in range(depth + 1)]
    D = {t for t in itertools.product(*worlds) if rng.random() < density}
    for k in range(depth + 1):
        for w in worlds[k]:
            if not any(t[k] == w for t in D):
                t = [rng.choice(ws) for ws in worlds]
                t[k] = w
                D.add(tuple(t))
    return D


def random_model(
    rng: random.Random,
    sig: Signature,
    max_worlds: int = 3,
    hierarchical: bool = False,
    density: float = 0.35,
    edge_density: Optional[float] = None,
) -> LayeredModel:
    """A random valid model over ``sig`` with at most ``max_worlds`` worlds per level."""
    n = sig.depth
    D = random_domain(rng, n, max_worlds, density)
    doms = [sorted({t[: k + 1] for t in D}) for k in range(n + 1)]
    worlds = [{t[k] for t in D} for k in range(n + 1)]
    p = edge_density if edge_density is not None else rng.choice([0.1, 0.2, 0.35])
    if hierarchical:
        top = {(s, t) for s in doms[n] for t in doms[n] if rng.random() < p}
        rels = [restrict_relation(top, k) for k in range(n)] + [top]
    else:
        rels = [{(s, t) for s in doms[k] for t in doms[k] if rng.random() < p} for k in range(n + 1)]
    propval = {}
    for k, ps in enumerate(sig.props):
        prefixes = doms[k - 1] if k else [()]
        for q in ps:
            for prefix in prefixes:
                ws = {w for w in sorted(worlds[k]) if rng.random() < 0.5}
                if ws:
                    propval[(q, prefix)] = ws
    nomval = {i: rng.choice(sorted(worlds[k])) for k, i in sig.all_noms()}
    return LayeredModel(sig, worlds, D, rels, propval, nomval)


def random_formula(
    rng: random.Random,
    sig: Signature,
    level: int,
    depth: int = 4,
    strict: bool = False,
    positive: bool = False,
    leaf_prob: float = 0.3,
) -> Formula:
    """A well-formed formula of level at most ``level`` and nesting depth at most ``depth``.

    ``strict`` keeps every atom and operator at exactly ``level``;
    ``positive`` leaves out negation.
    """
    allowed = [level] if strict else list(range(level + 1))

    def atoms(levels):
        return [Prop(q, k) for k in levels for q in sig.props[k]] + [Nom(i, k) for k in levels for i in sig.noms[k]]

    def gen(bound: int, d: int) -> Formula:
        levels = [k for k in allowed if k <= bound]
        leaves = atoms(levels)
        if not leaves:
            raise ValueError(f"no symbols available at levels {levels}")
        if d == 0 or rng.random() < leaf_prob:
            return rng.choice(leaves)
        ops = ["and", "dia", "dia"]
        if not positive:
            ops.append("neg")
        noms = [(k, i) for k in levels for i in sig.noms[k]]
        if noms:
            ops.append("at")
        op = rng.choice(ops)
        if op == "neg":
            return Neg(gen(bound, d - 1))
        if op == "and":
            return And(gen(bound, d - 1), gen(bound, d - 1))
        if op == "at":
            k, i = rng.choice(noms)
            return At(i, k, gen(k if not strict else level, d - 1))
        usable = [k for k in levels if atoms([j for j in allowed if j <= k])]
        k = rng.choice(usable)
        return Diamond(k, gen(k, d - 1))

    return gen(level, depth)


# ---------------------------------------------------------------- related models


def rename_worlds(M: LayeredModel, suffix: str = "'") -> LayeredModel:
    """An isomorphic copy with every world id suffixed."""

    def t(xs):
        return tuple(x + suffix for x in xs)

    return LayeredModel(
        M.sig,
        [{w + suffix for w in ws} for ws in M.worlds],
        {t(x) for x in M.domain},
        [{(t(a), t(b)) for a, b in rel} for rel in M.rels],
        {(q, t(prefix)): {w + suffix for w in ws} for (q, prefix), ws in M.propval.items()},
        {i: w + suffix for i, w in M.nomval.items()},
    )


def duplicate_top_world(M: LayeredModel, w: str, copy: str) -> LayeredModel:
    """Add ``copy`` as a level-0 twin of ``w``: same subtree, same moves in and out."""

    def variants(x):
        if x and x[0] == w:
            return [x, (copy,) + x[1:]]
        return [x]

    rels = [
        {(a2, b2) for a, b in rel for a2 in variants(a) for b2 in variants(b)}
        for rel in M.rels
    ]
    propval = dict(M.propval)
    for (q, prefix), ws in M.propval.items():
        if prefix and prefix[0] == w:
            propval[(q, (copy,) + prefix[1:])] = ws
        if not prefix and w in ws:
            propval[(q, prefix)] = ws | {copy}
    worlds = list(M.worlds)
    worlds[0] = worlds[0] | {copy}
    domain = {v for x in M.domain for v in variants(x)}
    return LayeredModel(M.sig, worlds, domain, rels, propval, M.nomval)


def bisimilar_variant(rng: random.Random, M: LayeredModel) -> LayeredModel:
    """A renamed copy of ``M`` in which an unnamed top-level world may be duplicated."""
    named = set(M.nomval.values())
    candidates = sorted(w for w in M.worlds[0] if w not in named)
    N = M
    if candidates and rng.random() < 0.7:
        N = duplicate_top_world(M, rng.choice(candidates), "dup")
    return rename_worlds(N)


def simulating_variant(rng: random.Random, M: LayeredModel, extra_edges: int = 2, extra_props: int = 2) -> LayeredModel:
    """A renamed copy of ``M`` with extra moves and extra true propositions.

    Hierarchical input stays hierarchical: extra moves are added at the top
    level and projected down.
    """
    n = M.depth
    rels = [set(r) for r in M.rels]
    Dn = M.sorted_domain(n)
    top_only = all(restrict_relation(M.rels[k], k - 1) == M.rels[k - 1] for k in range(1, n + 1))
    for _ in range(extra_edges):
        if top_only:
            pair = (rng.choice(Dn), rng.choice(Dn))
            for k in range(n + 1):
                rels[k].add((pair[0][: k + 1], pair[1][: k + 1]))
        else:
            k = rng.randint(0, n)
            Dk = M.sorted_domain(k)
            rels[k].add((rng.choice(Dk), rng.choice(Dk)))
    propval = dict(M.propval)
    for _ in range(extra_props):
        props = M.sig.all_props()
        if not props:
            break
        k, q = rng.choice(props)
        prefix = rng.choice(M.sorted_domain(k - 1)) if k else ()
        propval[(q, prefix)] = propval.get((q, prefix), frozenset()) | {rng.choice(sorted(M.worlds[k]))}
    return rename_worlds(LayeredModel(M.sig, M.worlds, M.domain, rels, propval, M.nomval))
