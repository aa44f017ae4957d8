"""``hierlog`` command line.

Exit codes: 0 success / true, 1 semantic false or empty, 2 input error,
3 disagreement between the satisfaction checker and the first-order oracle.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .equiv import (
    check_bisimulation,
    check_simulation,
    largest_bisimulation,
    largest_simulation,
    refines,
    totality_gap,
)
from .errors import HierlogError, NotHierarchical, SignatureMismatch
from .fol import eval_fol, point_assignment, render_fol, standard_translation, translate_model, translate_signature
from .formula import load_formulas, parse
from .io import family_to_dict, load_family, load_model
from .model import fmt_pair, fmt_tuple, is_hierarchical, validate_model
from .semantics import Checker, satisfying_points
from .signature import new_signature
from .smtlib import export_smtlib

OK, FALSE, INPUT_ERROR, DISAGREE = 0, 1, 2, 3


def _valid_model(path):
    M = load_model(path)
    M.require_valid()
    return M


def _point(text: str) -> tuple[str, ...]:
    return tuple(w.strip() for w in text.split(","))


def _formulas(args, sig):
    if args.formula is not None:
        return [parse(args.formula, sig)]
    return load_formulas(args.formulas, sig)


def cmd_validate(args) -> int:
    M = load_model(args.model)
    report = validate_model(M)
    if not report:
        print("ok")
        return OK
    for v in report:
        print(v)
    return FALSE


def cmd_check(args) -> int:
    M = _valid_model(args.model)
    formulas = _formulas(args, M.sig)
    if args.at is not None:
        sat = Checker(M)
        point = _point(args.at)
        if len(point) != args.level + 1:
            raise HierlogError(f"--at has {len(point)} components but --level is {args.level}")
        verdicts = [sat(point, f) for f in formulas]
        for v in verdicts:
            print("true" if v else "false")
        return OK if all(verdicts) else FALSE
    found_all = True
    for f in formulas:
        if len(formulas) > 1:
            print(f"# {f}")
        pts = satisfying_points(M, f, args.level)
        for t in pts:
            print(fmt_tuple(t))
        found_all &= bool(pts)
    return OK if found_all else FALSE


def cmd_hierarchical(args) -> int:
    M = _valid_model(args.model)
    verdict = is_hierarchical(M)
    if verdict:
        print("hierarchical")
        return OK
    print(f"not hierarchical: level {verdict.level}, pair {fmt_pair(verdict.pair)}")
    return FALSE


def _equiv(args, sim: bool) -> int:
    M, N = _valid_model(args.left), _valid_model(args.right)
    if args.check:
        family = load_family(args.check)
        verdict = (check_simulation if sim else check_bisimulation)(M, N, family, args.mode)
        if verdict:
            print("valid")
            return OK
        print(verdict.violation)
        return FALSE
    family = (largest_simulation if sim else largest_bisimulation)(M, N, args.mode)
    doc = family_to_dict(family)
    if sim:
        doc["total"] = totality_gap(M, family) is None
    print(json.dumps(doc, indent=2))
    return FALSE if family.is_empty() else OK


def cmd_bisim(args) -> int:
    return _equiv(args, sim=False)


def cmd_sim(args) -> int:
    return _equiv(args, sim=True)


def cmd_refine(args) -> int:
    M, N = _valid_model(args.abstract), _valid_model(args.concrete)
    try:
        verdict = refines(M, N, args.mode)
    except SignatureMismatch as exc:
        print(f"does not refine: SignatureMismatch: {exc}")
        return FALSE
    except NotHierarchical as exc:
        print(f"does not refine: NotHierarchical: {exc}")
        return FALSE
    if verdict:
        print("refines")
        return OK
    print(f"does not refine: {verdict.reason()}")
    return FALSE


def _adhoc_signature(args):
    levels = {}
    for kind in ("prop", "nom"):
        for entry in getattr(args, kind) or []:
            level, _, name = entry.partition(":")
            if not name or not level.isdigit():
                raise HierlogError(f"--{kind} expects LEVEL:NAME, got {entry!r}")
            levels.setdefault(kind, []).append((int(level), name))
    depth = max([args.level] + [k for entries in levels.values() for k, _ in entries])
    props = [[n for k, n in levels.get("prop", []) if k == r] for r in range(depth + 1)]
    noms = [[n for k, n in levels.get("nom", []) if k == r] for r in range(depth + 1)]
    return new_signature(depth, props, noms)


def cmd_translate(args) -> int:
    M = _valid_model(args.model) if args.model else None
    sig = M.sig if M is not None else _adhoc_signature(args)
    f = parse(args.formula, sig)
    sentence = standard_translation(f, args.level)
    if args.format == "text":
        print(render_fol(sentence))
        return OK
    FM = None
    if args.with_model:
        if M is None:
            raise HierlogError("--with-model needs a model file")
        FM = translate_model(M, args.level)
    sys.stdout.write(export_smtlib(translate_signature(sig, args.level), sentence, FM))
    return OK


def cmd_oracle(args) -> int:
    M = _valid_model(args.model)
    f = parse(args.formula, M.sig)
    point = _point(args.at)
    if len(point) != args.level + 1:
        raise HierlogError(f"--at has {len(point)} components but --level is {args.level}")
    direct = Checker(M)(point, f)
    fol = eval_fol(translate_model(M, args.level), point_assignment(point), standard_translation(f, args.level))
    print(f"satisfaction: {str(direct).lower()}")
    print(f"first-order:  {str(fol).lower()}")
    if direct != fol:
        print("DISAGREE")
        return DISAGREE
    print("AGREE")
    return OK if direct else FALSE


def cmd_fixture(args) -> int:
    sys.stdout.write(fixtures.text(args.name))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hierlog", description="Layered hybrid logic toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model file against the model invariants")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="evaluate formulas on a model")
    p.add_argument("model")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--formulas", metavar="FILE")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--at", metavar="W0,W1,...")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hierarchical", help="test whether each relation projects onto the one above")
    p.add_argument("model")
    p.set_defaults(func=cmd_hierarchical)

    for name, func, what in (("bisim", cmd_bisim, "bisimulation"), ("sim", cmd_sim, "simulation")):
        p = sub.add_parser(name, help=f"largest {what} between two models, or check a given one")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--mode", choices=["layered", "hierarchical"], default="layered")
        p.add_argument("--check", metavar="FAMILY")
        p.set_defaults(func=func)

    p = sub.add_parser("refine", help="decide whether the concrete model refines the abstract one")
    p.add_argument("abstract")
    p.add_argument("concrete")
    p.add_argument("--mode", choices=["layered", "hierarchical"], default="hierarchical")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("translate", help="standard translation of a formula to first-order logic")
    p.add_argument("model", nargs="?")
    p.add_argument("--formula", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--format", choices=["text", "smtlib"], default="text")
    p.add_argument("--with-model", action="store_true")
    p.add_argument("--prop", action="append", metavar="LEVEL:NAME", help="declare a proposition (no model file)")
    p.add_argument("--nom", action="append", metavar="LEVEL:NAME", help="declare a nominal (no model file)")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("oracle", help="cross-check satisfaction against the first-order translation")
    p.add_argument("model")
    p.add_argument("--formula", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--at", required=True, metavar="W0,W1,...")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fixture", help="print a bundled model")
    p.add_argument("name", choices=fixtures.NAMES)
    p.set_defaults(func=cmd_fixture)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HierlogError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
