"""Command-line surface.

One verb per invocation; complexes come either from a builder expression
(`subst(bd(simplex(1,2,3)); bd(simplex(1,2,3)), pt, pt)`) or a JSON file
{"m": ..., "facets": [[...], ...]}.  Reports are JSON by default and embed
the missing-face generator order so Taylor output is reproducible.

Exit codes: 0 success, 1 parse/validation error, 2 size refusal,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__
from . import complexes as cx
from . import moment_angle as ma
from . import taylor as ty
from . import whitehead as wh
from . import zigzag as zz

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SIZE = 2
EXIT_VERIFY = 3


class VerificationFailure(RuntimeError):
    pass


def load_complex(source, max_vertices):
    if source.endswith(".json"):
        with open(source) as fh:
            data = json.load(fh)
        if int(data["m"]) > max_vertices:
            raise cx.SizeLimitError(
                f"complex has {data['m']} vertices, above --max-vertices {max_vertices}")
        K = cx.SimplicialComplex.from_json_dict(data)
    else:
        K = cx.parse_complex(source, max_vertices=max_vertices)
    if K.m > max_vertices:
        raise cx.SizeLimitError(
            f"complex has {K.m} vertices, above --max-vertices {max_vertices}")
    return K


def group_json(h):
    return {"rank": h.rank, "torsion": list(h.torsion)}


def homology_json(table):
    return {str(d): group_json(h) for d, h in sorted(table.items())}


def cmd_homology(args, out):
    K = load_complex(args.complex, args.max_vertices)
    table = ma.zk_homology(K)
    out["ranks"] = {str(d): h.rank for d, h in sorted(table.items())}
    out["homology"] = homology_json(table)


def cmd_mf(args, out):
    K = load_complex(args.complex, args.max_vertices)
    out["missing_faces"] = [list(f) for f in K.missing_faces()]


def cmd_subst(args, out):
    K = load_complex(args.complex, args.max_vertices)
    out["complex"] = K.to_json_dict()
    out["missing_faces"] = [list(f) for f in K.missing_faces()]


def cmd_delta_w(args, out):
    w = wh.parse_whitehead(args.w)
    dw = wh.delta_w(w)
    out["dimension"] = w.dimension()
    out["complex"] = dw.complex.to_json_dict()
    out["sphere_facets"] = [list(f) for f in dw.sphere.facets]
    out["leaf_map"] = {str(l): v for l, v in sorted(dw.leaf_map.items())}


def cmd_hurewicz(args, out):
    w = wh.parse_whitehead(args.w)
    chain = wh.hurewicz_chain(w)
    out["degree"] = chain.degree
    out["chain"] = chain.to_text()


def cmd_status(args, out):
    K = load_complex(args.complex, args.max_vertices)
    w = wh.parse_whitehead(args.w)
    if w.is_single():
        out["status"] = wh.single_product_status(K, w.leaves())
    else:
        out["status"] = wh.nested_shape_status(K, w)


def cmd_realises(args, out):
    K = load_complex(args.complex, args.max_vertices)
    w = wh.parse_whitehead(args.w)
    report = wh.realises_sufficient(K, w)
    out["defined"] = report.defined
    out["nontrivial"] = report.nontrivial
    out["witness"] = report.witness.to_text() if report.witness else None
    out["notes"] = list(report.notes)


def cmd_taylor(args, out):
    K = load_complex(args.complex, args.max_vertices)
    C = ty.taylor_face_complex(K)
    out["ranks_by_index"] = [C.dim(-s) for s in range(len(ty.mf_order(K)) + 1)]
    out["homology"] = homology_json(ty.taylor_homology(K))


def cmd_taylor_cycle(args, out):
    K = load_complex(args.complex, args.max_vertices)
    w = wh.parse_whitehead(args.w)
    chain = ty.nested_taylor_cycle(w, K)
    out["degree"] = chain.degree
    out["cycle"] = chain.to_text()


def cmd_zigzag(args, out):
    K = load_complex(args.complex, args.max_vertices)
    w = wh.parse_whitehead(args.w)
    z = wh.hurewicz_chain(w, K.m)
    cycle, trace = zz.koszul_to_taylor(K, z)
    out["input_chain"] = z.to_text()
    out["cycle"] = cycle.to_text()
    out["trace"] = json.loads(trace.to_json())


def cmd_hochster(args, out):
    K = load_complex(args.complex, args.max_vertices)
    subsets = None
    if args.subset:
        subsets = [tuple(int(x) for x in args.subset.split(","))]
    per_subset, aggregate = ma.hochster_table(K, subsets)
    out["by_subset"] = [
        {"subset": list(J), "degree": d, "group": group_json(h)}
        for (J, d), h in sorted(per_subset.items())]
    out["aggregate"] = homology_json(aggregate)


def cmd_wedge_basis(args, out):
    K = load_complex(args.complex, args.max_vertices)
    order = tuple(int(x) for x in args.order.split(",")) if args.order else None
    basis = wh.shifted_wedge_basis(K, order)
    out["is_basis"] = basis.is_basis
    out["entries"] = [
        {"subset": list(e.subset), "missing_face": list(e.missing_face),
         "product": e.expr.to_text(), "chain": e.chain.to_text()}
        for e in basis.entries]
    out["details"] = list(basis.details)


def cmd_verify(args, out):
    """Cross-route suite: cellular vs Hochster vs Taylor homology, plus
    Taylor-resolution exactness for the Stanley-Reisner ideal of K."""
    K = load_complex(args.complex, args.max_vertices)
    failures = []
    cell = ma.zk_homology(K)
    _, hoch = ma.hochster_table(K)
    hoch = {d: h for d, h in hoch.items() if not h.is_trivial()}
    cell = {d: h for d, h in cell.items() if not h.is_trivial()}
    if cell != hoch:
        failures.append("cellular vs Hochster homology differ")
    try:
        tay = {d: h for d, h in ty.taylor_homology(K).items() if d > 0}
        reduced_cell = {d: h for d, h in cell.items() if d > 0}
        if tay != reduced_cell:
            failures.append("Taylor vs cellular homology differ")
    except cx.SizeLimitError as exc:
        out.setdefault("skipped", []).append(str(exc))
    if K.missing_faces():
        report = ty.verify_taylor_is_resolution(ty.MonomialIdeal.stanley_reisner(K))
        if not report.ok():
            failures.append(f"Taylor resolution check failed: {report.failures}")
    out["routes"] = {
        "cellular": homology_json(cell),
        "hochster": homology_json(hoch),
    }
    out["failures"] = failures
    if failures:
        raise VerificationFailure("; ".join(failures))


COMMANDS = {
    "homology": cmd_homology,
    "mf": cmd_mf,
    "subst": cmd_subst,
    "delta-w": cmd_delta_w,
    "hurewicz": cmd_hurewicz,
    "status": cmd_status,
    "realises": cmd_realises,
    "taylor": cmd_taylor,
    "taylor-cycle": cmd_taylor_cycle,
    "zigzag": cmd_zigzag,
    "hochster": cmd_hochster,
    "wedge-basis": cmd_wedge_basis,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="momangle",
        description="moment-angle complex homology and Whitehead product tooling")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in COMMANDS:
        p = sub.add_parser(verb)
        p.add_argument("--complex", help="builder expression or path to .json")
        p.add_argument("--w", help="Whitehead expression, e.g. [[1,2,3],4,5]")
        p.add_argument("--subset", help="comma-separated vertex subset")
        p.add_argument("--order", help="comma-separated shifted vertex order")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-vertices", type=int, default=20)
    return parser


NEEDS_COMPLEX = {"homology", "mf", "subst", "status", "realises", "taylor",
                 "taylor-cycle", "zigzag", "hochster", "wedge-basis", "verify"}
NEEDS_W = {"delta-w", "hurewicz", "status", "realises", "taylor-cycle", "zigzag"}


def render_text(out, indent=0):
    pad = "  " * indent
    lines = []
    for key, val in out.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(val, indent + 1))
        elif isinstance(val, list):
            lines.append(f"{pad}{key}: {json.dumps(val)}")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verb in NEEDS_COMPLEX and not args.complex:
        print(f"error: {args.verb} needs --complex", file=sys.stderr)
        return EXIT_PARSE
    if args.verb in NEEDS_W and not args.w:
        print(f"error: {args.verb} needs --w", file=sys.stderr)
        return EXIT_PARSE
    random.seed(args.seed)
    out = {"verb": args.verb,
           "inputs": {k: v for k, v in
                      [("complex", args.complex), ("w", args.w),
                       ("subset", args.subset), ("seed", args.seed)]
                      if v is not None},
           "engine": f"momangle {__version__}"}
    started = time.perf_counter()
    code = EXIT_OK
    try:
        COMMANDS[args.verb](args, out)
    except (cx.ParseError, ValueError) as exc:
        if isinstance(exc, cx.SizeLimitError):
            print(f"size refusal: {exc}", file=sys.stderr)
            return EXIT_SIZE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationFailure as exc:
        out["verification_error"] = str(exc)
        code = EXIT_VERIFY
    out["elapsed_s"] = round(time.perf_counter() - started, 6)
    if args.complex and args.verb in NEEDS_COMPLEX and "verification_error" not in out:
        try:
            K = load_complex(args.complex, args.max_vertices)
            out["generator_order"] = ["".join(map(str, f))
                                      for f in ty.mf_order(K)]
        except Exception:
            pass
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=False))
    else:
        print(render_text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
