import pytest

from hierlog import fixtures
from hierlog.model import LayeredModel
from hierlog.signature import new_signature


def make_t1(r1=None, extra_props=None):
    """Two-level toy: a -> b on top, (a,x) -> (b,y) below, every world named."""
    sig = new_signature(1, [[], extra_props or []], [["na"], ["nx", "ny"]])
    rels = [{(("a",), ("b",))}, {(("a", "x"), ("b", "y"))} if r1 is None else r1]
    return LayeredModel(
        sig,
        [{"a", "b"}, {"x", "y"}],
        {("a", "x"), ("b", "y")},
        rels,
        {},
        {"na": "a", "nx": "x", "ny": "y"},
    )


@pytest.fixture
def t1():
    return make_t1()


@pytest.fixture(scope="session")
def strongbox():
    return fixtures.load("strongbox")


@pytest.fixture(scope="session")
def strongbox0():
    return fixtures.load("strongbox0")


@pytest.fixture(scope="session")
def strongbox_reset():
    return fixtures.load("strongbox_reset")


@pytest.fixture(scope="session")
def strongbox_nonhier():
    return fixtures.load("strongbox_nonhier")
