"""Regenerate the bundled strongbox models under src/hierlog/fixtures/.

Run from the repository root: ``python tools/build_fixtures.py``.
The three-level controller: level 0 is closed / get_access / open; each
is refined into inner states at level 1; authorization is refined into
three password attempts plus a success state at level 2. Every other
level-1 state has the single unnamed child ``leaf``.
"""

from pathlib import Path

from hierlog.io import dump_model
from hierlog.model import LayeredModel, is_hierarchical, restrict_model, restrict_relation
from hierlog.signature import new_signature

OUT = Path(__file__).resolve().parents[1] / "src" / "hierlog" / "fixtures"

CHILDREN = {
    "closed": ["idle", "blocked"],
    "get_access": ["identification", "authorization"],
    "open": ["time_init", "stopwatch", "time_out"],
}
GRANDCHILDREN = {"authorization": ["att1", "att2", "att3", "granted"]}

SIG = new_signature(
    2,
    props=[["safe_state"], ["timed_state"], []],
    noms=[
        ["closed", "get_access", "open"],
        ["idle", "blocked", "identification", "authorization", "time_init", "stopwatch", "time_out"],
        ["att1", "att2", "att3"],
    ],
)

# level-2 transitions; R1 and R0 are their projections
MOVES = [
    (("closed", "idle", "leaf"), ("get_access", "identification", "leaf")),
    (("closed", "idle", "leaf"), ("get_access", "authorization", "att1")),
    (("get_access", "identification", "leaf"), ("get_access", "authorization", "att1")),
    (("get_access", "identification", "leaf"), ("closed", "idle", "leaf")),
    (("get_access", "authorization", "att1"), ("get_access", "authorization", "att2")),
    (("get_access", "authorization", "att2"), ("get_access", "authorization", "att3")),
    (("get_access", "authorization", "att1"), ("get_access", "authorization", "granted")),
    (("get_access", "authorization", "att2"), ("get_access", "authorization", "granted")),
    (("get_access", "authorization", "att3"), ("get_access", "authorization", "granted")),
    (("get_access", "authorization", "att3"), ("closed", "blocked", "leaf")),
    (("get_access", "authorization", "granted"), ("open", "time_init", "leaf")),
    (("open", "time_init", "leaf"), ("open", "stopwatch", "leaf")),
    (("open", "stopwatch", "leaf"), ("open", "time_out", "leaf")),
    (("open", "time_out", "leaf"), ("closed", "idle", "leaf")),
]

RESET_MOVES = [
    (("closed", "blocked", "leaf"), ("closed", "admin_reset", "leaf")),
    (("closed", "admin_reset", "leaf"), ("closed", "idle", "leaf")),
]


def build(children, moves, sig=SIG):
    domain = [
        (top, mid, low)
        for top, mids in children.items()
        for mid in mids
        for low in GRANDCHILDREN.get(mid, ["leaf"])
    ]
    worlds = [{t[k] for t in domain} for k in range(3)]
    rels = [restrict_relation(moves, 0), restrict_relation(moves, 1), frozenset(moves)]
    propval = {
        ("safe_state", ()): {"closed", "get_access"},
        ("timed_state", ("open",)): {"time_init", "stopwatch", "time_out"},
        ("timed_state", ("get_access",)): {"authorization"},
    }
    nomval = {i: i for _, i in sig.all_noms()}
    M = LayeredModel(sig, worlds, domain, rels, propval, nomval)
    M.require_valid()
    return M


def main():
    strongbox = build(CHILDREN, MOVES)
    assert is_hierarchical(strongbox)
    reset_children = dict(CHILDREN, closed=["idle", "blocked", "admin_reset"])
    reset = build(reset_children, MOVES + RESET_MOVES)
    assert is_hierarchical(reset)
    strongbox0 = restrict_model(strongbox, 0)

    # drop the level-0 transition closed -> get_access, keeping the level-1 one
    nonhier_full = build(CHILDREN, MOVES)
    rels = list(nonhier_full.rels)
    rels[0] = rels[0] - {(("closed",), ("get_access",))}
    nonhier = restrict_model(
        LayeredModel(nonhier_full.sig, nonhier_full.worlds, nonhier_full.domain, rels, nonhier_full.propval, nonhier_full.nomval),
        1,
    )
    nonhier.require_valid()
    assert not is_hierarchical(nonhier)

    OUT.mkdir(parents=True, exist_ok=True)
    for name, M in [
        ("strongbox0", strongbox0),
        ("strongbox", strongbox),
        ("strongbox_reset", reset),
        ("strongbox_nonhier", nonhier),
    ]:
        dump_model(M, OUT / f"{name}.json")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
