"""JSON documents for models and relation families.

Model document::

    {
      "depth": 1,
      "signature": {"props": [["p"], []], "noms": [["a"], ["x"]]},
      "worlds": [["a", "b"], ["x", "y"]],
      "domain": [["a", "x"], ["b", "y"]],
      "relations": [[[["a"], ["b"]]], [[["a", "x"], ["b", "y"]]]],
      "propval": [{"prop": "p", "prefix": [], "worlds": ["a"]}],
      "nomval": {"a": "a", "x": "x"}
    }

Relation family document::

    {"kind": "layered", "levels": [[[["a"], ["a"]]], ...]}
    {"kind": "hierarchical", "pairs": [[["a", "x"], ["a", "x"]], ...]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .equiv import RelationFamily
from .errors import HierlogError, ModelFormatError
from .model import LayeredModel
from .signature import new_signature

MODEL_KEYS = {"depth", "signature", "worlds", "domain", "relations", "propval", "nomval"}
FAMILY_KEYS = {"kind", "levels", "pairs", "total"}


def _strs(xs, what):
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise ModelFormatError(f"{what} must be a list of strings")
    return tuple(xs)


def _pair(p, what):
    if not isinstance(p, list) or len(p) != 2:
        raise ModelFormatError(f"{what} must be a pair of tuples")
    return _strs(p[0], what), _strs(p[1], what)


def model_from_dict(doc: dict) -> LayeredModel:
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    unknown = set(doc) - MODEL_KEYS
    if unknown:
        raise ModelFormatError(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = {"depth", "signature", "worlds", "domain", "relations"} - set(doc)
    if missing:
        raise ModelFormatError(f"missing keys: {', '.join(sorted(missing))}")
    depth = doc["depth"]
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
        raise ModelFormatError("depth must be a natural number")
    sigdoc = doc["signature"]
    if not isinstance(sigdoc, dict) or set(sigdoc) - {"props", "noms"}:
        raise ModelFormatError("signature must be an object with keys props and noms")
    props = sigdoc.get("props", [[] for _ in range(depth + 1)])
    noms = sigdoc.get("noms", [[] for _ in range(depth + 1)])
    if not isinstance(props, list) or not isinstance(noms, list):
        raise ModelFormatError("signature props and noms must be lists per level")
    try:
        sig = new_signature(
            depth,
            [_strs(p, "signature.props entry") for p in props],
            [_strs(n, "signature.noms entry") for n in noms],
        )
    except ValueError as exc:
        if isinstance(exc, HierlogError):
            raise
        raise ModelFormatError(str(exc)) from None
    if not isinstance(doc["worlds"], list):
        raise ModelFormatError("worlds must be a list of lists")
    if not isinstance(doc["domain"], list):
        raise ModelFormatError("domain must be a list of tuples")
    if not isinstance(doc["relations"], list):
        raise ModelFormatError("relations must be a list per level")
    propval = {}
    for entry in doc.get("propval", []):
        if not isinstance(entry, dict) or set(entry) != {"prop", "prefix", "worlds"}:
            raise ModelFormatError("propval entries need exactly prop, prefix, worlds")
        if not isinstance(entry["prop"], str):
            raise ModelFormatError("propval prop must be a string")
        key = (entry["prop"], _strs(entry["prefix"], "propval prefix"))
        propval[key] = propval.get(key, frozenset()) | frozenset(_strs(entry["worlds"], "propval worlds"))
    nomval = doc.get("nomval", {})
    if not isinstance(nomval, dict) or not all(isinstance(v, str) for v in nomval.values()):
        raise ModelFormatError("nomval must map nominals to world ids")
    rels = []
    for rel in doc["relations"]:
        if not isinstance(rel, list):
            raise ModelFormatError("each relation must be a list of pairs")
        rels.append([_pair(p, "relation pair") for p in rel])
    return LayeredModel(
        sig=sig,
        worlds=[_strs(ws, "worlds entry") for ws in doc["worlds"]],
        domain=[_strs(t, "domain tuple") for t in doc["domain"]],
        rels=rels,
        propval=propval,
        nomval=nomval,
    )


def model_to_dict(M: LayeredModel) -> dict:
    return {
        "depth": M.depth,
        "signature": M.sig.to_dict(),
        "worlds": [sorted(ws) for ws in M.worlds],
        "domain": [list(t) for t in sorted(M.domain)],
        "relations": [[[list(s), list(t)] for s, t in sorted(rel)] for rel in M.rels],
        "propval": [
            {"prop": p, "prefix": list(prefix), "worlds": sorted(ws)}
            for (p, prefix), ws in sorted(M.propval.items())
            if ws
        ],
        "nomval": dict(sorted(M.nomval.items())),
    }


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: {exc}") from None


def load_model(path) -> LayeredModel:
    return model_from_dict(_read_json(path))


def dump_model(M: LayeredModel, path=None) -> str:
    text = json.dumps(model_to_dict(M), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def family_to_dict(F: RelationFamily) -> dict:
    def pairs(B):
        return [[list(a), list(b)] for a, b in sorted(B)]

    if F.kind == "hierarchical":
        return {"kind": "hierarchical", "pairs": pairs(F.pairs)}
    return {"kind": "layered", "levels": [pairs(B) for B in F.levels]}


def family_from_dict(doc: dict) -> RelationFamily:
    if not isinstance(doc, dict) or set(doc) - FAMILY_KEYS:
        raise ModelFormatError("relation family must be an object with keys kind and levels/pairs")
    kind = doc.get("kind")
    if kind == "hierarchical":
        if "pairs" not in doc or "levels" in doc:
            raise ModelFormatError("hierarchical family needs pairs")
        return RelationFamily.hierarchical(_pair(p, "pair") for p in doc["pairs"])
    if kind == "layered":
        if "levels" not in doc or "pairs" in doc:
            raise ModelFormatError("layered family needs levels")
        return RelationFamily.layered([_pair(p, "pair") for p in lv] for lv in doc["levels"])
    raise ModelFormatError(f"unknown family kind {kind!r}")


def load_family(path) -> RelationFamily:
    return family_from_dict(_read_json(path))
