"""Batch command line: load documents, run one operation, emit a report.

Every invocation prints a single canonical JSON report to standard
output (and to ``--out`` when given).  The exit status is 0 exactly
when the report carries no error object.  ``--no-timing`` drops the
timing field, making repeated runs byte-identical.
"""

from __future__ import annotations

import argparse
import sys
import time

from .complexes import DeltaComplex, SimplexSubset
from .errors import DualComplexError, PairBroken, StepFailed
from .homology import W0_CAVEAT, betti_numbers, euler_characteristic, homology_equal
from .library import BUILTIN_COMPLEXES, builtin_names, get_complex, get_configuration, get_script
from .ops import (
    CollapseCertificate,
    ConeExtensionInstruction,
    cartesian_product_triangulated,
    cone_extension,
    greedy_collapse,
    simplicial_product,
    star_subdivision,
    validate_certificate,
)
from .serialization import (
    SCHEMA_VERSION,
    canonical_text,
    complex_from_data,
    configuration_from_data,
    dump_complex,
    dump_configuration,
    dump_script,
    load_any_complex,
    load_configuration,
    load_pair,
    load_pair_script,
    load_script,
    read_document,
    write_text,
)
from .snc import StrictSncDescriptor, fiber_complex, run_script, track_embedded_pair


def _ids(arg: str) -> frozenset[str]:
    return frozenset(part for part in arg.split(",") if part)


def _complex_summary(cx: DeltaComplex) -> dict:
    return {
        "cells": len(cx),
        "dim": cx.dim,
        "f_vector": list(cx.f_vector()),
    }


def _betti_block(cx: DeltaComplex) -> dict:
    b = betti_numbers(cx)
    return {"betti": list(b.b), "w0_dims": list(b.w0_dims)}


# --- handlers -----------------------------------------------------------------


def _cmd_validate(args) -> dict:
    data = read_document(args.infile)
    if isinstance(data, dict) and "component_meta" in data:
        cfg = configuration_from_data(data, where=args.infile)
        out = {"kind": "configuration"}
        out.update(_complex_summary(cfg.dual))
        out["ambient_dim"] = cfg.ambient_dim
        out["divisor_regime"] = cfg.divisor_regime
        return out
    cx = complex_from_data(data, where=args.infile)
    out = {"kind": "complex"}
    out.update(_complex_summary(cx))
    return out


def _cmd_homology(args) -> dict:
    cx = load_any_complex(args.infile)
    out = _betti_block(cx)
    out["euler"] = euler_characteristic(cx)
    out["w0_caveat"] = W0_CAVEAT
    return out


def _cmd_subdivide(args) -> dict:
    cx = load_any_complex(args.infile)
    result = star_subdivision(cx, args.simplex, args.vertex)
    out = {
        "before": {**_complex_summary(cx), **_betti_block(cx)},
        "after": {**_complex_summary(result), **_betti_block(result)},
    }
    out["betti_preserved"] = bool(homology_equal(cx, result))
    if args.outfile:
        dump_complex(result, args.outfile)
        out["written"] = args.outfile
    return out


def _cmd_cone_extend(args) -> dict:
    cx = load_any_complex(args.infile)
    instr = ConeExtensionInstruction(
        region=SimplexSubset(cx, _ids(args.region)),
        removed=SimplexSubset(cx, _ids(args.removed) if args.removed else ()),
        apex=args.apex,
    )
    result = cone_extension(cx, instr)
    out = {
        "eliminated": sorted(instr.removed.members),
        "created": sorted(set(result.ids()) - set(cx.ids())),
        "before": {**_complex_summary(cx), **_betti_block(cx)},
        "after": {**_complex_summary(result), **_betti_block(result)},
    }
    if args.outfile:
        dump_complex(result, args.outfile)
        out["written"] = args.outfile
    return out


def _cmd_product(args) -> dict:
    c1 = load_any_complex(args.a)
    c2 = load_any_complex(args.b)
    if args.triangulated:
        result = cartesian_product_triangulated(c1, c2).triangulated
        flavor = "staircase"
    else:
        result = simplicial_product(c1, c2)
        flavor = "tensor"
    out = {
        "flavor": flavor,
        "factors": [_complex_summary(c1), _complex_summary(c2)],
        "result": {**_complex_summary(result), **_betti_block(result)},
    }
    if args.outfile:
        dump_complex(result, args.outfile)
        out["written"] = args.outfile
    return out


def _cmd_blowup_run(args) -> dict:
    cfg = load_configuration(args.config)
    script, strata = load_script(args.script)
    run = run_script(cfg, script)
    out = {
        "states": [
            {
                "index": i,
                **_complex_summary(c.dual),
                "betti": list(run.bettis[i].b),
                "w0_dims": list(run.bettis[i].w0_dims),
            }
            for i, c in enumerate(run.history)
        ],
        "steps": [
            {
                "index": rec.index,
                "kind": rec.center.kind,
                "new_vertex": rec.center.new_vertex,
                "eliminated": list(rec.eliminated),
                "created": list(rec.created),
                "collapse_witness": rec.collapse_witness,
            }
            for rec in run.steps
        ],
        "w0_caveat": W0_CAVEAT,
    }
    if strata is not None:
        final = run.final
        marking = (
            frozenset(strata.marked)
            if strata.marked is not None
            else frozenset(final.dual.ids())
        )
        descriptor = StrictSncDescriptor(final.dual, marking)
        fibers = [fiber_complex(descriptor, point) for point in strata.points]
        first = fibers[0][0]
        identical = all(
            fx.f_vector() == first.f_vector()
            and betti_numbers(fx).b == betti_numbers(first).b
            for fx, _ in fibers[1:]
        )
        out["fibers"] = {
            "points": list(strata.points),
            "identical": identical,
            "fiber_f_vector": list(first.f_vector()),
        }
    if args.final_out:
        dump_complex(run.final.dual, args.final_out)
        out["final_written"] = args.final_out
    return out


def _cmd_pair_run(args) -> dict:
    pair = load_pair(args.pair)
    steps = load_pair_script(args.script)
    run = track_embedded_pair(pair, steps)
    verdicts = [
        {
            "index": v.index,
            "region_match": v.region_match,
            "removed_covered": v.removed_covered,
            "inclusion_extended": v.inclusion_extended,
            "betti_inner": list(v.betti_inner.b),
            "betti_outer": list(v.betti_outer.b),
            "betti_match": v.betti_match,
            "filtration_preserved": v.filtration_preserved,
            "ok": v.ok,
        }
        for v in run.verdicts
    ]
    return {"verdicts": verdicts, "all_ok": all(v.ok for v in run.verdicts)}


def _cmd_compare(args) -> dict:
    a = load_any_complex(args.a)
    b = load_any_complex(args.b)
    return homology_equal(a, b).report()


def _cmd_collapse(args) -> dict:
    cx = load_any_complex(args.infile)
    result = greedy_collapse(cx, _ids(args.target))
    if isinstance(result, CollapseCertificate):
        return {
            "collapsed": True,
            "pairs": [list(pair) for pair in result.steps],
            "revalidates": validate_certificate(cx, result),
        }
    return {
        "collapsed": False,
        "remaining": sorted(result.remaining),
    }


def _cmd_example(args) -> dict:
    name = args.name
    out: dict = {"name": name}
    if name in BUILTIN_COMPLEXES:
        dest = args.dest or f"{name}.cx"
        dump_complex(get_complex(name), dest)
    else:
        dest = args.dest or f"{name}.snc"
        dump_configuration(get_configuration(name), dest)
    out["written"] = dest
    if args.script_out:
        script = get_script(name)
        if script is None:
            raise DualComplexError(f"builtin {name!r} has no companion script")
        dump_script(script, args.script_out)
        out["script_written"] = args.script_out
    return out


# --- plumbing -----------------------------------------------------------------


def _error_object(err: DualComplexError) -> dict:
    obj = {"type": type(err).__name__, "message": str(err)}
    if isinstance(err, StepFailed):
        obj["step"] = err.index
    if isinstance(err, PairBroken):
        if err.step is not None:
            obj["step"] = err.step
        obj["check"] = err.check
    return obj


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualcx",
        description="dual-complex calculus for normal crossing configurations",
    )
    parser.add_argument("--out", help="also write the report to this path")
    parser.add_argument(
        "--no-timing", action="store_true",
        help="omit the timing field (byte-identical reruns)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a document")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("homology", help="exact Betti numbers of a complex")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("subdivide", help="star subdivision at a simplex")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--simplex", required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--out-complex", dest="outfile")
    p.set_defaults(handler=_cmd_subdivide)

    p = sub.add_parser("cone-extend", help="cone extension at (region, removed)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--region", required=True, help="comma-separated ids")
    p.add_argument("--removed", default="", help="comma-separated ids")
    p.add_argument("--apex", required=True)
    p.add_argument("--out-complex", dest="outfile")
    p.set_defaults(handler=_cmd_cone_extend)

    p = sub.add_parser("product", help="product of two complexes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument(
        "--triangulated", action="store_true",
        help="staircase triangulation instead of the full product",
    )
    p.add_argument("--out-complex", dest="outfile")
    p.set_defaults(handler=_cmd_product)

    p = sub.add_parser("blowup-run", help="replay a resolution script")
    p.add_argument("--config", required=True)
    p.add_argument("--script", required=True)
    p.add_argument("--final-out", dest="final_out")
    p.set_defaults(handler=_cmd_blowup_run)

    p = sub.add_parser("pair-run", help="replay a script on an embedded pair")
    p.add_argument("--pair", required=True)
    p.add_argument("--script", required=True)
    p.set_defaults(handler=_cmd_pair_run)

    p = sub.add_parser("compare", help="compare Betti vectors of two complexes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("collapse", help="greedy collapse onto a target")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--target", required=True, help="comma-separated ids")
    p.set_defaults(handler=_cmd_collapse)

    p = sub.add_parser("example", help="materialize a builtin object")
    p.add_argument("name", choices=builtin_names())
    p.add_argument("--dest")
    p.add_argument("--script-out", dest="script_out")
    p.set_defaults(handler=_cmd_example)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    started = time.perf_counter()
    report: dict = {"schema_version": SCHEMA_VERSION, "command": args.command}
    try:
        payload = args.handler(args)
        report["ok"] = True
        report.update(payload)
    except DualComplexError as err:
        report["ok"] = False
        report["error"] = _error_object(err)
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    text = canonical_text(report)
    if args.out:
        try:
            write_text(args.out, text)
        except DualComplexError as err:
            report["ok"] = False
            report["error"] = _error_object(err)
            text = canonical_text(report)
    sys.stdout.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
