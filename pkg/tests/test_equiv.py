import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hierlog.equiv import (
    RelationFamily,
    check_bisimulation,
    check_simulation,
    h_simulates,
    l_simulates,
    largest_bisimulation,
    largest_simulation,
    refines,
    totality_gap,
)
from hierlog.errors import InvalidModel, NotHierarchical, SignatureMismatch
from hierlog.generate import (
    bisimilar_variant,
    random_model,
    random_signature,
    rename_worlds,
    simulating_variant,
)
from hierlog.model import LayeredModel, restrict_model
from hierlog.signature import new_signature

from conftest import make_t1


def _cycle_and_loop(noms=((), ())):
    """Two inner states swapping under one parent versus one inner state looping."""
    sig = new_signature(1, [[], []], [list(noms[0]), list(noms[1])])
    left = LayeredModel(
        sig,
        [{"s"}, {"x1", "x2"}],
        {("s", "x1"), ("s", "x2")},
        [{(("s",), ("s",))}, {(("s", "x1"), ("s", "x2")), (("s", "x2"), ("s", "x1"))}],
        {},
        {"n": "x1"} if noms[1] else {},
    )
    right = LayeredModel(
        sig,
        [{"t"}, {"y"}],
        {("t", "y")},
        [{(("t",), ("t",))}, {(("t", "y"), ("t", "y"))}],
        {},
        {"n": "y"} if noms[1] else {},
    )
    drawn = RelationFamily.layered(
        [{(("s",), ("t",))}, {(("s", "x1"), ("t", "y")), (("s", "x2"), ("t", "y"))}]
    )
    return left, right, drawn


def test_identity_is_a_bisimulation(t1):
    assert check_bisimulation(t1, t1, RelationFamily.identity(t1))
    assert check_bisimulation(t1, t1, RelationFamily.identity(t1, "hierarchical"))


def test_cycle_and_loop_are_bisimilar_without_nominals():
    left, right, drawn = _cycle_and_loop()
    assert check_bisimulation(left, right, drawn)
    assert largest_bisimulation(left, right) == drawn


def test_naming_an_inner_state_breaks_the_bisimulation():
    left, right, drawn = _cycle_and_loop(noms=((), ("n",)))
    verdict = check_bisimulation(left, right, drawn)
    assert not verdict
    assert verdict.violation.clause == "ATOM_1 2.ii"
    assert verdict.violation.pair == (("s", "x2"), ("t", "y"))
    assert largest_bisimulation(left, right).levels[1] == frozenset()


def test_unmatched_move_breaks_zig(t1):
    stuck = make_t1(r1=set())
    verdict = check_bisimulation(t1, stuck, RelationFamily.identity(t1))
    assert not verdict
    assert str(verdict.violation) == "ZIG_1 violated at ((a,x),(a,x))"


def test_domain_clause():
    M = make_t1()
    family = RelationFamily.layered([set(), {(("a", "y"), ("a", "y"))}])
    assert check_bisimulation(M, M, family).violation.clause == "DOMAIN_1"


def test_largest_contains_identity(t1, strongbox):
    for M in (t1, strongbox):
        B = largest_bisimulation(M, M)
        for k, ident in enumerate(RelationFamily.identity(M).levels):
            assert ident <= B.levels[k]


def test_different_top_valuations_are_never_bisimilar():
    sig = new_signature(0, [["p"]], [[]])
    yes = LayeredModel(sig, [{"a"}], {("a",)}, [set()], {("p", ()): {"a"}}, {})
    no = LayeredModel(sig, [{"a"}], {("a",)}, [set()], {}, {})
    assert largest_bisimulation(yes, no).is_empty()
    # one direction survives as a simulation
    assert largest_simulation(no, yes).levels[0] == {(("a",), ("a",))}
    assert largest_simulation(yes, no).is_empty()


def test_strongbox_and_reset_are_not_bisimilar(strongbox, strongbox_reset):
    # the reset adds closed -> closed on top, which the original cannot match
    assert (("closed",), ("closed",)) in strongbox_reset.rels[0]
    assert (("closed",), ("closed",)) not in strongbox.rels[0]
    assert largest_bisimulation(strongbox, strongbox_reset).is_empty()


def test_reset_embedding(strongbox, strongbox_reset):
    for kind in ("layered", "hierarchical"):
        embed = RelationFamily.identity(strongbox, kind)
        assert check_simulation(strongbox, strongbox_reset, embed)
        back = check_simulation(strongbox_reset, strongbox, embed)
        assert not back
        assert str(back.violation) == "ZIG_0 violated at ((closed),(closed))"


def test_blocked_state_cannot_be_simulated_back(strongbox, strongbox_reset):
    S = largest_simulation(strongbox_reset, strongbox)
    related = {w for w, _ in S.levels[1]}
    assert ("closed", "blocked") not in related
    assert ("closed", "admin_reset") not in related


def test_extra_behaviour_on_the_right_is_harmless(t1):
    wider = make_t1(r1={(("a", "x"), ("b", "y")), (("b", "y"), ("a", "x"))})
    S = largest_simulation(t1, wider)
    assert totality_gap(t1, S) is None
    assert S.levels[1] == {(("a", "x"), ("a", "x")), (("b", "y"), ("b", "y"))}


def test_fresh_target_prop_does_not_block_simulation():
    plain = make_t1(extra_props=["q"])
    marked = LayeredModel(
        plain.sig, plain.worlds, plain.domain, plain.rels, {("q", ("a",)): {"x"}, ("q", ("b",)): {"y"}}, plain.nomval
    )
    assert l_simulates(plain, marked)
    assert not l_simulates(marked, plain)


def test_simulates_on_fixtures(strongbox, strongbox_reset, t1):
    assert l_simulates(t1, t1) and h_simulates(t1, t1)
    assert l_simulates(strongbox, strongbox_reset)
    assert h_simulates(strongbox, strongbox_reset)
    assert not l_simulates(strongbox_reset, strongbox)
    assert not h_simulates(strongbox_reset, strongbox)


def test_hierarchical_mode_needs_hierarchical_models(strongbox_nonhier):
    with pytest.raises(NotHierarchical):
        largest_bisimulation(strongbox_nonhier, strongbox_nonhier, "hierarchical")
    assert not largest_bisimulation(strongbox_nonhier, strongbox_nonhier).is_empty()


def test_signature_and_validity_guards(t1, strongbox):
    with pytest.raises(SignatureMismatch):
        largest_bisimulation(t1, strongbox)
    broken = LayeredModel(t1.sig, t1.worlds, t1.domain, [set(), {(("a", "y"), ("b", "y"))}], {}, t1.nomval)
    with pytest.raises(InvalidModel):
        check_bisimulation(broken, broken, RelationFamily.layered([set(), set()]))


def test_refinement_chain(strongbox0, strongbox, strongbox_reset):
    assert refines(strongbox0, strongbox)
    assert refines(strongbox0, strongbox, "layered")
    assert refines(strongbox, strongbox_reset)
    assert refines(strongbox0, strongbox_reset)
    back = refines(strongbox_reset, strongbox)
    assert not back
    assert back.reason().startswith("non-total at level 2")
    with pytest.raises(SignatureMismatch):
        refines(strongbox, strongbox0)


def test_refinement_needs_the_same_upper_signature(strongbox0, strongbox):
    fewer = new_signature(0, [["safe_state"]], [["closed", "get_access"]])
    M = LayeredModel(
        fewer, strongbox0.worlds, strongbox0.domain, strongbox0.rels, strongbox0.propval,
        {"closed": "closed", "get_access": "get_access"},
    )
    with pytest.raises(SignatureMismatch):
        refines(M, strongbox)


def test_refinement_rejects_non_hierarchical(strongbox0, strongbox_nonhier):
    with pytest.raises(NotHierarchical):
        refines(strongbox0, strongbox_nonhier)
    assert not refines(strongbox0, strongbox_nonhier, "layered")


def test_family_helpers(t1):
    H = RelationFamily.identity(t1, "hierarchical")
    assert H.induced(1) == RelationFamily.identity(t1).levels
    assert RelationFamily.identity(t1).truncate(0).pairs == {(("a",), ("a",)), (("b",), ("b",))}
    with pytest.raises(ValueError):
        H.truncate(0)
    L = RelationFamily.layered([{(("a",), ("b",))}, set()])
    assert L.inverse().levels[0] == {(("b",), ("a",))}
    assert len(L) == 1 and not L.is_empty()


def _random_pair(rng, related):
    depth = rng.randint(0, 2)
    sig = random_signature(rng, depth)
    hier = rng.random() < 0.5
    M = random_model(rng, sig, hierarchical=hier)
    if related == "bisim":
        N = bisimilar_variant(rng, M)
    elif related == "sim":
        N = simulating_variant(rng, M)
    else:
        N = random_model(rng, sig, hierarchical=hier)
    return M, N, hier


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["bisim", "sim", "none"]))
def test_largest_families_pass_their_checks(rng, related):
    M, N, hier = _random_pair(rng, related)
    kinds = ["layered", "hierarchical"] if hier else ["layered"]
    for kind in kinds:
        B = largest_bisimulation(M, N, kind)
        S = largest_simulation(M, N, kind)
        assert check_bisimulation(M, N, B)
        assert check_simulation(M, N, S)
        assert B.pairs <= S.pairs
        assert check_simulation(M, N, B)
        assert largest_bisimulation(N, M, kind) == B.inverse()


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_variants_are_related_as_built(rng):
    M, N, hier = _random_pair(rng, "bisim")
    assert totality_gap(M, largest_bisimulation(M, N)) is None
    M, N, hier = _random_pair(rng, "sim")
    assert l_simulates(M, N)
    if hier:
        assert h_simulates(M, N)
        assert refines(M, N)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["bisim", "none"]))
def test_truncated_bisimulations_stay_bisimulations(rng, related):
    M, N, _ = _random_pair(rng, related)
    B = largest_bisimulation(M, N)
    for k in range(M.depth + 1):
        assert check_bisimulation(restrict_model(M, k), restrict_model(N, k), B.truncate(k))


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_hierarchical_family_induces_a_layered_one(rng):
    M, N, hier = _random_pair(rng, "bisim")
    if not hier:
        return
    H = largest_bisimulation(M, N, "hierarchical")
    induced = RelationFamily.layered(H.induced(M.depth))
    assert check_bisimulation(M, N, induced)


def test_renaming_is_an_isomorphism(strongbox):
    copy = rename_worlds(strongbox)
    B = largest_bisimulation(strongbox, copy)
    assert totality_gap(strongbox, B) is None
    assert totality_gap(copy, B.inverse()) is None


def test_small_exhaustive_union():
    # union of every passing family over the cycle/loop pair is the drawn one
    left, right, drawn = _cycle_and_loop()
    cands = [(k, p) for k in range(2) for p in itertools.product(left.sorted_domain(k), right.sorted_domain(k))]
    union = [set(), set()]
    for r in range(len(cands) + 1):
        for sub in itertools.combinations(cands, r):
            levels = [{p for j, p in sub if j == k} for k in range(2)]
            if check_bisimulation(left, right, RelationFamily.layered(levels)):
                for k, p in sub:
                    union[k].add(p)
    assert RelationFamily.layered(union) == drawn
