"""Bundled strongbox controller models.

``strongbox0``
    the three-state abstract controller (depth 0)
``strongbox``
    its refinement with inner states and the password-attempt fragment (depth 2)
``strongbox_reset``
    ``strongbox`` plus an administrative reset out of ``blocked`` (depth 2)
``strongbox_nonhier``
    the two upper levels of ``strongbox`` without the level-0 move
    ``closed -> get_access``; not hierarchical (depth 1)
"""

import json
from importlib import resources

from ..io import model_from_dict

NAMES = ("strongbox0", "strongbox", "strongbox_reset", "strongbox_nonhier")


def path(name: str):
    if name not in NAMES:
        raise KeyError(f"no bundled fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__name__) / f"{name}.json"


def text(name: str) -> str:
    return path(name).read_text()


def load(name: str):
    return model_from_dict(json.loads(text(name)))
