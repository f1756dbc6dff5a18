"""Command-line entry point: ``qpmult analyze | unit | semiconj | verify-paper``.

Exit codes: 0 success, 2 invalid input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import flowfile as ff
from .claims import run_claims
from .conjugacy import (
    conjugacy_witness,
    scale_equivalence,
    semiconjugacy_report,
    semiconjugacy_witness,
)
from .errors import InternalInconsistency, NotConjugate, NotSemiconjugate, QPError
from .lattice import coefficient_ring
from .multiplier import (
    ALGEBRAIC,
    DEFAULT_MAX_INDEX,
    brute_force_multipliers,
    classify,
    exponent_in_group,
    frequency_lattice,
    validate_flow,
)
from .numberfield import format_element, minimal_polynomial, norm, poly_str, to_float
from .units import COMPUTED, UnitGroup, quadratic_fundamental_unit, unit_group

EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 2, 3


def _matrix_lines(m, indent="    "):
    width = max(len(str(x)) for r in m for x in r)
    return [indent + "[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in m]


def _oracle(flow, report, bound: int) -> dict:
    found = brute_force_multipliers(flow, bound)
    values = [m.value for m in found]
    out = {"row_bound": bound, "count": len(found)}
    if flow.model != ALGEBRAIC:
        ok = sorted(Fraction(v) for v in values) == [-1, 1]
        out.update(agrees=ok, detail="only ±1 found" if ok else f"found {values}")
        return out
    group = report.group
    if group.rank != 1:
        out.update(agrees=True, detail="exponent matching skipped for unit rank >= 2")
        return out
    g = group.generators[0]
    missing = [format_element(v) for v in values if exponent_in_group(v, g.value) is None]
    first_row = max(abs(x) for x in g.witness[0])
    gen_seen = bound < first_row or any(v == g.value for v in values)
    ok = not missing and gen_seen
    detail = []
    if missing:
        detail.append("outside <±g>: " + ", ".join(missing))
    if not gen_seen:
        detail.append("generator missing from oracle output")
    out.update(agrees=ok, detail="; ".join(detail) or "every oracle multiplier is ±g^j",
               multipliers=[ff.rats(v.coords) for v in values])
    return out


def _text_analysis(doc: dict) -> str:
    lines = []
    if doc.get("description"):
        lines.append(doc["description"])
    lines.append(f"model           {doc['model']}")
    if "field" in doc:
        f = doc["field"]
        sig = f["signature"]
        lines.append(f"field           Q(d), d root of {poly_str(f['min_poly'])} in "
                     f"[{f['root_interval'][0]}, {f['root_interval'][1]}]")
        lines.append(f"irreducible by  {f['irreducibility']}")
        lines.append(f"signature       r1={sig['r1']} r2={sig['r2']} unit rank={sig['unit_rank']}")
    lines.append(f"classification  {doc['classification']}")
    lines.append(f"structure       S ≅ {doc['structure']}  (+ translations)")
    lines.append(f"multipliers     {doc['summary']}")
    mg = doc["multiplier_group"]
    if doc["model"] == ALGEBRAIC:
        idx = mg["index"] if mg["index"] is not None else f"<= {mg['index_upper_bound']}"
        rel = " (relative to supplied unit)" if mg["index_relative_to_supplied"] else ""
        lines.append(f"index           [o_F^* : M] = {idx}{rel}")
        for u in mg["unit_group"]:
            lines.append(f"unit generator  ({', '.join(u['coords'])})  [{u['provenance']}]")
        for g in mg["generators"]:
            lines.append(f"generator       ({', '.join(g['coords'])}) ≈ {g['approx']}")
            lines.append(f"  min poly      {poly_str(g['min_poly'])}")
            lines.append(f"  norm          {g['norm']}")
            lines.append("  witness")
            lines.extend(_matrix_lines(g["witness"]))
        if "ratio_min_poly" in doc:
            lines.append(f"K = Q(d2/d1)    min poly {poly_str(doc['ratio_min_poly'])}")
    else:
        lines.append("witnesses       ±identity")
    lines.append("checklist")
    for c in doc["checklist"]:
        lines.append(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']}")
    for note in doc["notes"]:
        lines.append(f"note: {note}")
    if "oracle" in doc:
        o = doc["oracle"]
        lines.append(f"oracle          bound {o['row_bound']}: {o['count']} multipliers, "
                     f"{'agrees' if o['agrees'] else 'DISAGREES'} ({o['detail']})")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    spec = ff.load_flow(args.file)
    flow = validate_flow(spec)
    report = classify(flow, max_index=args.max_index)
    lat = ring = None
    if flow.model == ALGEBRAIC:
        lat = frequency_lattice(flow)
        ring = coefficient_ring(lat)
    oracle = _oracle(flow, report, args.oracle_bound) if args.oracle_bound > 0 else None
    doc = ff.analysis_dict(flow, report, lat, ring, oracle)
    sys.stdout.write(ff.dumps(doc) if args.json else _text_analysis(doc))
    if not report.passed or (oracle is not None and not oracle["agrees"]):
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_unit(args) -> int:
    if args.disc is not None:
        eps = quadratic_fundamental_unit(args.disc)
        units = UnitGroup(eps.field, (eps,), (COMPUTED,))
    else:
        with open(args.field_file, encoding="utf-8") as fh:
            field, supplied = ff.parse_field_text(fh.read())
        units = unit_group(field, supplied or None)
    doc = ff.unit_dict(units, args.disc)
    if args.json:
        sys.stdout.write(ff.dumps(doc))
        return EXIT_OK
    for u, p in zip(units.generators, units.provenance):
        sys.stdout.write(
            f"unit        {format_element(u)}\n"
            f"coords      ({', '.join(ff.rats(u.coords))})  [{p}]\n"
            f"min poly    {poly_str(minimal_polynomial(u))}\n"
            f"norm        {norm(u)}\n"
            f"approx      {to_float(u):.15g}\n")
    return EXIT_OK


def cmd_semiconj(args) -> int:
    a = validate_flow(ff.load_flow(args.file_a))
    b = validate_flow(ff.load_flow(args.file_b))
    doc: dict = {"kind": "semiconj"}
    scale = scale_equivalence(a, b)
    doc["scale_equivalent"] = scale is not None
    if scale is not None:
        s = scale.scale_factor
        doc["scale_factor"] = ff.rats(s.coords) if hasattr(s, "coords") else [ff.rat(s)]
    try:
        doc["conjugacy"] = {"verdict": "conjugate", "matrix": [list(r) for r in conjugacy_witness(a, b).matrix]}
    except NotConjugate as exc:
        doc["conjugacy"] = {"verdict": "not conjugate", "error": exc.name, "detail": str(exc)}
    try:
        w = semiconjugacy_witness(a, b)
    except NotSemiconjugate as exc:
        doc["semiconjugacy"] = {"verdict": "not semiconjugate", "error": exc.name, "detail": str(exc)}
    else:
        rep = semiconjugacy_report(a, b)
        doc["semiconjugacy"] = {
            "verdict": "semiconjugate",
            "matrix": [list(r) for r in w.matrix],
            "det": w.det,
            "translation": "arbitrary",
        }
        doc["containment"] = {
            "b_in_a": rep.b_in_a,
            "a_in_b": rep.a_in_b,
            "index_b_in_a": rep.index_b_in_a,
            "certified": rep.certified,
            "exponents_a": list(rep.group_a.exponents) if rep.group_a else [],
            "exponents_b": list(rep.group_b.exponents) if rep.group_b else [],
            "notes": list(rep.notes),
        }
    if args.json:
        sys.stdout.write(ff.dumps(doc))
        return EXIT_OK
    out = [f"scale equivalent  {doc['scale_equivalent']}"
           + (f" (theta = ({', '.join(doc['scale_factor'])}))" if doc["scale_equivalent"] else "")]
    c = doc["conjugacy"]
    out.append(f"conjugacy         {c['verdict']}" + (f": {c['error']}: {c['detail']}" if "error" in c else ""))
    if "matrix" in c:
        out.extend(_matrix_lines(c["matrix"]))
    s = doc["semiconjugacy"]
    out.append(f"semiconjugacy     {s['verdict']}" + (f": {s['error']}: {s['detail']}" if "error" in s else ""))
    if "matrix" in s:
        out.extend(_matrix_lines(s["matrix"]))
        out.append("                  + arbitrary translation")
        k = doc["containment"]
        out.append(f"M_b ⊆ M_a         {k['b_in_a']}"
                   + (f" (index {k['index_b_in_a']})" if k["index_b_in_a"] else ""))
        out.append(f"M_a ⊆ M_b         {k['a_in_b']}")
        if k["exponents_a"]:
            out.append(f"exponents         a: {k['exponents_a']}  b: {k['exponents_b']}")
        out.extend(f"note: {n}" for n in k["notes"])
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    results = run_claims()
    width = max(len(c.key) for c, _, _ in results)
    failed = 0
    for claim, ok, observed in results:
        failed += not ok
        line = f"{'PASS' if ok else 'FAIL'}  {claim.key.ljust(width)}  {claim.text}"
        if not ok:
            line += f"  (observed {observed})"
        print(line)
    print(f"{len(results) - failed}/{len(results)} claims reproduced")
    return EXIT_OK if not failed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpmult", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="multiplier group and symmetry report of a flow file")
    a.add_argument("file")
    a.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
    a.add_argument("--oracle-bound", type=int, default=0,
                   help="also run the brute-force oracle with this first-row bound (0 = skip)")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    u = sub.add_parser("unit", help="fundamental unit of Q(sqrt d) or of a field file")
    g = u.add_mutually_exclusive_group(required=True)
    g.add_argument("--disc", type=int)
    g.add_argument("field_file", nargs="?")
    u.add_argument("--json", action="store_true")
    u.set_defaults(func=cmd_unit)

    s = sub.add_parser("semiconj", help="scale/conjugacy/semiconjugacy between two flows")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_semiconj)

    v = sub.add_parser("verify-paper", help="re-run every reproduced worked example")
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USER if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except QPError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return EXIT_USER
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USER
    except Exception as exc:  # a bug, not bad input
        print(f"error: internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
