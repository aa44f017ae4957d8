"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly as a script.
"""

import contextlib
import io
import itertools
import random
import sys

import pytest

from hierlog import fixtures
from hierlog.cli import main as cli_main
from hierlog.equiv import (
    RelationFamily,
    check_bisimulation,
    largest_bisimulation,
    largest_simulation,
    refines,
)
from hierlog.errors import SignatureMismatch
from hierlog.fol import eval_fol, point_assignment, render_fol, standard_translation, translate_model
from hierlog.formula import parse
from hierlog.generate import (
    bisimilar_variant,
    random_formula,
    random_model,
    random_signature,
    simulating_variant,
)
from hierlog.model import LayeredModel, is_hierarchical, restrict_model
from hierlog.semantics import Checker
from hierlog.signature import new_signature

SEED = 20240611
CRITERIA = {}


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn

    return register


def _pairs(rng, count, related):
    """``count`` random model pairs over a shared signature, depth <= 2, <= 3 worlds per level."""
    out = []
    for j in range(count):
        depth = rng.randint(0, 2)
        sig = random_signature(rng, depth)
        hier = j % 2 == 0
        M = random_model(rng, sig, hierarchical=hier)
        if j % 4 == 3:
            N = random_model(rng, sig, hierarchical=hier)
        else:
            N = related(rng, M)
        out.append((M, N, hier))
    return out


# ---------------------------------------------------------------- 1


@criterion(1, "satisfaction agrees with the first-order translation")
def oracle_equivalence():
    rng = random.Random(SEED)
    triples = disagreements = 0
    while triples < 10_000:
        depth = rng.randint(0, 2)
        sig = random_signature(rng, depth)
        M = random_model(rng, sig, max_worlds=3, hierarchical=rng.random() < 0.5)
        k = rng.randint(0, depth)
        FM, check = translate_model(M, k), Checker(M)
        for _ in range(10):
            f = random_formula(rng, sig, k, depth=rng.randint(0, 4))
            t = rng.choice(M.sorted_domain(k))
            direct = check(t, f)
            fol = eval_fol(FM, point_assignment(t), standard_translation(f, k))
            triples += 1
            disagreements += direct != fol
    return disagreements == 0, f"{triples} triples, {disagreements} disagreements"


# ---------------------------------------------------------------- 2


@criterion(2, "worked jump example and its translation")
def worked_example():
    M = fixtures.load("strongbox")
    f = parse("@idle closed", M.sig)
    value = Checker(M)(("closed", "idle"), f)
    text = render_fol(standard_translation(f, 1))
    ok = value and "".join(text.split()) == "".join("D1(x0, idle) ∧ (closed = x0)".split())
    return ok, f"value={value}, translation={text!r}"


# ---------------------------------------------------------------- 3


@criterion(3, "intrusive move without its top-level projection")
def counter_example():
    M = fixtures.load("strongbox_nonhier")
    check = Checker(M)
    inner = check(("closed", "idle"), parse("<1> get_access", M.sig))
    outer = check(("closed", "idle"), parse("<0> get_access", M.sig))
    verdict = is_hierarchical(M)
    path = fixtures.path("strongbox_nonhier")
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["hierarchical", str(path)])
    line = buf.getvalue().strip()
    ok = inner and not outer and not verdict and verdict.level == 1 and code == 1 and line.startswith("not hierarchical: level 1")
    return ok, f"<1>={inner}, <0>={outer}, cli: {line!r}"


# ---------------------------------------------------------------- 4 and 8


def _bisimulation_pairs():
    rng = random.Random(SEED + 4)
    return rng, _pairs(rng, 120, bisimilar_variant)


@criterion(4, "bisimilar points agree on strict formulas")
def modal_invariance():
    rng, pairs = _bisimulation_pairs()
    related = checks = failures = 0
    for M, N, hier in pairs:
        cM, cN = Checker(M), Checker(N)
        B = largest_bisimulation(M, N)
        for k in range(M.depth + 1):
            formulas = [random_formula(rng, M.sig, k, 4, strict=True) for _ in range(100)]
            for w, v in B.levels[k]:
                related += 1
                for f in formulas:
                    checks += 1
                    failures += cM(w, f) != cN(v, f)
        if hier:
            # hierarchical families preserve every formula, mixed levels included
            induced = largest_bisimulation(M, N, "hierarchical").induced(M.depth)
            for k in range(M.depth + 1):
                formulas = [random_formula(rng, M.sig, k, 4) for _ in range(100)]
                for w, v in induced[k]:
                    related += 1
                    for f in formulas:
                        checks += 1
                        failures += cM(w, f) != cN(v, f)
    ok = failures == 0 and related > 0 and len(pairs) >= 100
    return ok, f"{len(pairs)} model pairs, {related} related points, {checks} checks, {failures} mismatches"


@criterion(8, "truncated bisimulations are bisimulations of the truncated models")
def truncation():
    _, pairs = _bisimulation_pairs()
    pairs = pairs + [(fixtures.load(n), fixtures.load(n), True) for n in ("strongbox", "strongbox_reset")]
    checked = failures = 0
    for M, N, _ in pairs:
        B = largest_bisimulation(M, N)
        for k in range(M.depth + 1):
            checked += 1
            failures += not check_bisimulation(restrict_model(M, k), restrict_model(N, k), B.truncate(k))
    return failures == 0, f"{checked} truncations, {failures} failures"


# ---------------------------------------------------------------- 5


@criterion(5, "simulations preserve positive formulas")
def preservation():
    rng = random.Random(SEED + 5)
    pairs = _pairs(rng, 120, simulating_variant)
    related = checks = failures = 0
    for M, N, hier in pairs:
        cM, cN = Checker(M), Checker(N)
        modes = [("layered", True)] + ([("hierarchical", False)] if hier else [])
        for kind, strict in modes:
            S = largest_simulation(M, N, kind)
            levels = S.levels if kind == "layered" else S.induced(M.depth)
            for k in range(M.depth + 1):
                formulas = [random_formula(rng, M.sig, k, 4, strict=strict, positive=True) for _ in range(100)]
                for w, v in levels[k]:
                    related += 1
                    for f in formulas:
                        checks += 1
                        failures += cM(w, f) and not cN(v, f)
    ok = failures == 0 and related > 0 and len(pairs) >= 100
    return ok, f"{len(pairs)} model pairs, {related} related points, {checks} checks, {failures} violations"


# ---------------------------------------------------------------- 6


def _powerset(xs):
    return itertools.chain.from_iterable(itertools.combinations(xs, r) for r in range(len(xs) + 1))


def _union_of_bisimulations(M, N):
    """Union of every layered family that passes the check, by enumeration."""
    cands = [(k, p) for k in range(M.depth + 1) for p in itertools.product(M.sorted_domain(k), N.sorted_domain(k))]
    union = [set() for _ in range(M.depth + 1)]
    for sub in _powerset(cands):
        levels = [set() for _ in range(M.depth + 1)]
        for k, p in sub:
            levels[k].add(p)
        if check_bisimulation(M, N, RelationFamily.layered(levels)):
            for k, p in sub:
                union[k].add(p)
    return union


def _top_models():
    """Every depth-0 model with at most two worlds, one proposition and one nominal."""
    sig = new_signature(0, [["p"]], [["i"]])
    for n in (1, 2):
        W = [f"w{j}" for j in range(n)]
        D = [(w,) for w in W]
        for R in _powerset(list(itertools.product(D, D))):
            for P in _powerset(W):
                for named in W:
                    yield LayeredModel(sig, [set(W)], set(D), [set(R)], {("p", ()): set(P)} if P else {}, {"i": named})


def _single_parent_models():
    """Every depth-1 model with one top world, at most two inner worlds and one inner proposition."""
    sig = new_signature(1, [[], ["q"]], [[], []])
    for W1 in (["x"], ["x", "y"]):
        D = [("a", w) for w in W1]
        for R0 in _powerset([(("a",), ("a",))]):
            for R1 in _powerset(list(itertools.product(D, D))):
                for Q in _powerset(W1):
                    propval = {("q", ("a",)): set(Q)} if Q else {}
                    yield LayeredModel(sig, [{"a"}, set(W1)], set(D), [set(R0), set(R1)], propval, {})


@criterion(6, "largest bisimulation equals the union of all bisimulations")
def maximality():
    mismatches = 0
    counts = {}
    for name, models in (("depth 0 exhaustive", list(_top_models())), ("depth 1 one-parent exhaustive", list(_single_parent_models()))):
        counts[name] = 0
        for M in models:
            for N in models:
                counts[name] += 1
                B = largest_bisimulation(M, N)
                mismatches += [set(lv) for lv in B.levels] != _union_of_bisimulations(M, N)
    rng = random.Random(SEED + 6)
    name = "depth 1 sampled"
    counts[name] = 0
    while counts[name] < 300:
        sig = random_signature(rng, 1, 1, 1)
        M = random_model(rng, sig, max_worlds=2)
        N = bisimilar_variant(rng, M) if rng.random() < 0.5 else random_model(rng, sig, max_worlds=2)
        if sum(len(M.domain_at(k)) * len(N.domain_at(k)) for k in range(2)) > 12:
            continue
        counts[name] += 1
        mismatches += [set(lv) for lv in largest_bisimulation(M, N).levels] != _union_of_bisimulations(M, N)
    scope = ", ".join(f"{name}: {n} pairs" for name, n in counts.items())
    return mismatches == 0, f"{scope}; {mismatches} mismatches"


# ---------------------------------------------------------------- 7


@criterion(7, "refinement chain holds forwards and fails backwards")
def refinement_chain():
    top, mid, reset = (fixtures.load(n) for n in ("strongbox0", "strongbox", "strongbox_reset"))
    forward = [bool(refines(top, mid, "hierarchical")), bool(refines(mid, reset, "hierarchical"))]
    backward = []
    for M, N in ((mid, top), (reset, mid)):
        try:
            backward.append("true" if refines(M, N, "hierarchical") else "false")
        except SignatureMismatch:
            backward.append("SignatureMismatch")
    ok = all(forward) and "true" not in backward
    return ok, f"forward={forward}, reversed={backward}"


# ---------------------------------------------------------------- driver


def run(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
