"""``k3w``: command-line front end.

Exit codes: 0 success (stable, valid), 1 negative verdict (unstable,
violations found), 2 input error, 3 internal inconsistency between two
independent computations.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .checker import SurfaceGraph, lct_zero_advisories, validate
from .errors import K3WallsError, ParseError
from .fibers import L, N, WeierstrassData, classify_all, deg_L_jinfty, discriminant, disc_total, nk_counts
from .git import MarkedTriple, classify_git_boundary, hm_oracle, marked_stability
from .io import SCHEMA_VERSION, dumps, format_rational, load, parse_rational
from .poly import BinaryForm
from .strata import Family, count_strata, iter_strata, surface_type_catalog
from .walls import enumerate_walls, fiber_model, lct_table

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, report: dict, text_lines):
    if getattr(args, "json", False):
        print(json.dumps({"schema_version": SCHEMA_VERSION, **report}, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _load(path, *kinds):
    doc = load(path)
    if doc["kind"] not in kinds:
        raise ParseError(f"expected a {' or '.join(kinds)} document, got {doc['kind']!r}", "kind")
    return doc


def _rat(text: str) -> Fraction:
    return parse_rational(text, "argument")


# -- classify ----------------------------------------------------------------------


def _profile_text(p):
    return "(" + ", ".join(str(v) for v in p) + ")"


def cmd_classify(args) -> int:
    doc = _load(args.input, "weierstrass", "marked_triple")
    w = doc["payload"].w if isinstance(doc["payload"], MarkedTriple) else doc["payload"]
    reports = classify_all(w)
    isotrivial = discriminant(w).is_zero()
    places = [
        {"form": str(r.place.form), "degree": r.place.degree, "profile": [str(v) for v in r.place.profile],
         "fiber": str(r.fiber), "slc": r.slc, "lct_zero": r.lct_zero}
        for r in reports
    ]
    totals = {"N": w.N, "isotrivial_jinf": isotrivial}
    if isotrivial:
        totals["nk_counts"] = {str(k): a for k, a in nk_counts(reports).items()}
        totals["deg_L"] = format_rational(deg_L_jinfty(nk_counts(reports)))
    else:
        totals["discriminant_total"] = disc_total(reports)
    if w.N == 2:
        totals["git_boundary_class"] = classify_git_boundary(w).value
    lines = [f"{'place':<28} {'deg':>3}  {'(vA, vB, vD)':<16} fiber"]
    for p, r in zip(places, reports):
        flags = ("" if r.slc else "  not slc") + ("  lct 0" if r.lct_zero else "")
        lines.append(f"{p['form']:<28} {p['degree']:>3}  {_profile_text(r.place.profile):<16} {p['fiber']}{flags}")
    lines.append("")
    lines += [f"{k}: {v}" for k, v in totals.items()]
    _emit(args, {"report": "classify", "places": places, "totals": totals}, lines)
    return EXIT_OK


# -- git-check ---------------------------------------------------------------------


def _verdict_obj(v):
    out = {"status": v.status.value}
    if v.witness is not None:
        out["witness"] = {"place": str(v.witness.place.form),
                          "profile": [str(x) for x in v.witness.place.profile], "v_l": v.witness.v_l}
    return out


def cmd_git_check(args) -> int:
    t = _load(args.input, "marked_triple")["payload"]
    verdict = marked_stability(t, strict_statement=args.strict_statement)
    report = {"report": "git-check", "verdict": _verdict_obj(verdict)}
    lines = [f"status: {verdict.status.value}"]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness.place.form} "
                     f"profile {_profile_text(verdict.witness.place.profile)} v_l={verdict.witness.v_l}")
    if args.oracle:
        oracle = hm_oracle(t)
        agree = oracle.status is verdict.status
        report["oracle"] = {**_verdict_obj(oracle), "agrees": agree}
        lines.append(f"oracle: {oracle.status.value} ({'agrees' if agree else 'DISAGREES'})")
        if not agree:
            sys.stderr.write("internal inconsistency: vanishing-order test and Hilbert-Mumford "
                             "oracle disagree on this input\n" + dumps(t))
            _emit(args, report, lines)
            return EXIT_INTERNAL
    _emit(args, report, lines)
    return EXIT_OK if verdict.stable else EXIT_NEGATIVE


# -- walls -------------------------------------------------------------------------


def cmd_walls(args) -> int:
    above = None
    extra_lines, report = [], {"report": "walls"}
    if args.input:
        above = _load(args.input, "weight_query")["payload"]
    if args.above is not None:
        above = _rat(args.above)
    walls = enumerate_walls(above)
    report["above"] = None if above is None else format_rational(above)
    report["walls"] = [{"value": format_rational(w.value), "kind": w.kind.value, "transition": str(w.transition)}
                       for w in walls]
    if args.input:
        models = {e.label: fiber_model(e.fiber, above).value for e in lct_table()}
        for f in (L, N(2)):
            models[str(f)] = fiber_model(f, above).value
        report["fiber_models"] = models
        extra_lines = ["", f"fiber models at a = {format_rational(above)}:"]
        extra_lines += [f"  {k:<8} {v}" for k, v in models.items()]
    lines = [f"{r['value']:>6}  {r['kind']:<6} {r['transition']}" for r in report["walls"]]
    _emit(args, report, lines + extra_lines)
    return EXIT_OK


# -- strata ------------------------------------------------------------------------


def _families(name):
    if name is None:
        return None
    if name == "II":
        return [Family.II, Family.II_INF]
    try:
        return [Family(name)]
    except ValueError:
        raise InputError(f"unknown family {name!r}; choose from {', '.join(f.value for f in Family)}") from None


def cmd_strata(args) -> int:
    families = _families(args.family)
    kw = dict(r=args.r, s=args.s, n=args.n, max_n=args.max_n, canonicalize=args.canonical)
    it = iter_strata(families, args.dim, **kw)
    if args.count:
        if args.dim is None and args.n is None and not args.canonical:
            total = sum(count_strata(f, args.max_n, args.r, args.s) for f in (families or list(Family)))
        else:
            total = sum(1 for _ in it)
        _emit(args, {"report": "strata", "count": total}, [str(total)])
        return EXIT_OK
    if args.json:
        rows = [{"family": d.family.value, "r": d.r, "s": d.s, "n": d.n, "parts": list(d.parts),
                 "dim": d.dim, "factors": [str(f) for f in d.factors], "annotations": list(d.annotations)}
                for d in it]
        _emit(args, {"report": "strata", "strata": rows}, [])
    else:
        for d in it:
            print(d)
    return EXIT_OK


# -- validate ----------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _load(args.input, "surface_graph")
    g: SurfaceGraph = doc["payload"]
    opts = doc["options"]
    label_name = args.label or opts.get("catalog_label")
    label = None
    if label_name is not None:
        labels = {lab.label: lab for lab in surface_type_catalog()}
        if label_name not in labels:
            raise InputError(f"unknown catalog label {label_name!r}")
        label = labels[label_name]
    violations = validate(g, label, chain=args.chain or bool(opts.get("chain")),
                          below_twelfth=args.below_twelfth or bool(opts.get("below_twelfth")))
    advisories = [f"component {i}: {f} has lct 0" for i, f in lct_zero_advisories(g)]
    report = {
        "report": "validate",
        "violations": [{"code": v.code, "condition": v.condition, "component": v.component, "detail": v.detail}
                       for v in violations],
        "advisories": advisories,
    }
    lines = [str(v) for v in violations] or ["valid"]
    lines += [f"advisory: {a}" for a in advisories]
    _emit(args, report, lines)
    return EXIT_NEGATIVE if violations else EXIT_OK


# -- gen-random --------------------------------------------------------------------


def _random_form(rng, degree, height):
    return BinaryForm.from_coeffs(rng.randint(-height, height) for _ in range(degree + 1))


def cmd_gen_random(args) -> int:
    seed = args.seed if args.seed is not None else os.environ.get("K3W_SEED")
    rng = random.Random(seed)
    n = args.N
    while True:
        a, b = _random_form(rng, 4 * n, args.height), _random_form(rng, 6 * n, args.height)
        if not (a.is_zero() and b.is_zero()):
            break
    w = WeierstrassData(n, a, b)
    if args.kind == "marked_triple":
        while True:
            l = _random_form(rng, 1, args.height)
            if not l.is_zero():
                break
        payload = MarkedTriple(w, l)
    else:
        payload = w
    sys.stdout.write(dumps(payload))
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3w", description="Exact computations for elliptic K3 degenerations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="fiber types of Weierstrass data")
    c.add_argument("input")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("git-check", help="GIT stability of a marked triple")
    c.add_argument("input")
    c.add_argument("--oracle", action="store_true", help="cross-check with the Hilbert-Mumford weights")
    c.add_argument("--strict-statement", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_git_check)

    c = sub.add_parser("walls", help="wall table")
    c.add_argument("--above", help="only walls strictly above this weight, e.g. 1/12")
    c.add_argument("--input", help="weight_query document; also prints fiber models at that weight")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_walls)

    c = sub.add_parser("strata", help="boundary strata")
    c.add_argument("--family", help="II (both Type II strata), II_INF, III0, III1, III1_NOMID, III2, III2_NOMID")
    c.add_argument("--dim", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--max-n", type=int)
    c.add_argument("--canonical", action="store_true", help="keep one of each end-swapped pair")
    c.add_argument("--count", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_strata)

    c = sub.add_parser("validate", help="check a surface graph")
    c.add_argument("input")
    c.add_argument("--label", help="catalog type A-H whose marking ranges apply")
    c.add_argument("--chain", action="store_true", help="also check end-marking bounds")
    c.add_argument("--below-twelfth", action="store_true", help="enforce I_n with n <= 12")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_validate)

    c = sub.add_parser("gen-random", help="random input document (seed from K3W_SEED)")
    c.add_argument("--kind", choices=("weierstrass", "marked_triple"), default="weierstrass")
    c.add_argument("--N", type=int, default=2)
    c.add_argument("--height", type=int, default=5)
    c.add_argument("--seed")
    c.set_defaults(func=cmd_gen_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc.diagnostic()}", file=sys.stderr)
    except (K3WallsError, InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
