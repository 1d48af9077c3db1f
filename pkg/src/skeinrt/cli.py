"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .cyclotomic import ctx_new
from .reports import emit_report, make_report, dumps

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _level(p: int) -> int:
    if p % 2 or p < 6:
        raise UsageError(f"level must be even and at least 6, got {p}")
    return p


def _output(args, kind: str, payload) -> None:
    rep = make_report(kind, payload)
    if args.json:
        emit_report(rep, args.json)
    else:
        sys.stdout.write(dumps(rep))


def cmd_scan(args) -> int:
    from .reports import cached_scan

    mode = "exact" if args.exact else ("numeric-first" if args.numeric_first else "certified")
    levels = [_level(p) for p in args.p]
    reps = [cached_scan(p, mode, use_cache=not args.no_cache) for p in levels]
    _output(args, "scan-genericity", reps if len(reps) > 1 else reps[0])
    for r in reps:
        print(f"p={r['p']}: {'generic' if r['generic'] else 'NOT generic'} {r['zero_types']}", file=sys.stderr)
    return EXIT_OK if all(r["generic"] for r in reps) else EXIT_FAIL


def cmd_decompose(args) -> int:
    from .genus1 import decompose

    if args.genus != 1:
        raise UsageError("decompose supports genus 1 only")
    rep = decompose(ctx_new(_level(args.p[0])), exact=args.exact)
    _output(args, "decompose", rep.to_dict())
    return EXIT_OK


def cmd_cyclicity(args) -> int:
    from .genus1 import krylov_analysis, predicted_cyclic, rt_generators

    rows = []
    for p in args.p:
        ctx = ctx_new(_level(p))
        kr = krylov_analysis(rt_generators(ctx), [1] + [0] * ctx.max_color)
        rows.append({"p": p, "cyclic": kr.cyclic, "dim": kr.dim, "total": kr.total,
                     "numeric_dim": kr.numeric_dim, "method": kr.method, "predicted": predicted_cyclic(p)})
    _output(args, "cyclicity", rows if len(rows) > 1 else rows[0])
    return EXIT_OK if all(r["cyclic"] for r in rows) else EXIT_FAIL


def cmd_certify(args) -> int:
    from .certify import certify_graph
    from .graphs import fly_eyes, level_shape

    p = _level(args.p[0])
    if level_shape(p) is None:
        raise UsageError(f"level {p} has none of the shapes 4r, 2r^2, 2r1r2")
    if args.genus < 2:
        raise UsageError("certificates need genus at least 2")
    res = certify_graph(ctx_new(p), fly_eyes(args.genus))
    _output(args, "certify", {"p": p, "genus": args.genus, "classes": [r.to_dict() for r in res],
                              "passed": all(r.passes for r in res)})
    return EXIT_OK if all(r.passes for r in res) else EXIT_FAIL


def cmd_homology(args) -> int:
    from . import homology as H

    g = args.genus
    if not 1 <= g <= H.MAX_EXHAUSTIVE_GENUS:
        raise UsageError(f"genus must be in 1..{H.MAX_EXHAUSTIVE_GENUS}")
    out = {"genus": g, "fixed_dim": H.sp_fixed_subspace(g).dim, "normalizations": H.normalization_report(g)}
    ok = out["fixed_dim"] == 2
    if g == 2:
        out["identities"] = H.displayed_identities()
        ok = ok and all(d["equals_display"] and d["in_ideal"] for d in out["identities"])
    if g in (2, 3):
        item2 = H.lemma_item2_check(g)
        out["item2_passes"] = item2.passes
        out["item2_failures"] = item2.failures
        ok = ok and item2.passes
    out["passed"] = ok
    _output(args, "homology-check", out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    from .reports import run_paper_suite

    levels = [_level(p) for p in args.p] if args.p else None
    res = run_paper_suite(levels, max_genus=args.genus or 3, use_cache=not args.no_cache, jobs=args.jobs)
    _output(args, "paper-suite", res.to_dict())
    for c in res.checks:
        print(f"{c.status.upper():7s} {c.id}  ({c.anchor})", file=sys.stderr)
    return res.exit_code


def cmd_eval_p(args) -> int:
    from .genericity import PPolynomial, eval_P_roots

    poly = PPolynomial()
    if args.corrupt is not None:
        poly = poly.corrupted(args.corrupt)
    val, z = eval_P_roots(args.n1, args.n2, args.e1, args.e2, poly=poly)
    out = {"n1": args.n1, "n2": args.n2, "e1": args.e1, "e2": args.e2, "value": z, "abs": abs(z),
           "exact_zero": val.is_zero(), "checksum_ok": poly.verify()}
    _output(args, "eval-p", out)
    return EXIT_OK if not val.is_zero() else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skeinrt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, need_p=True, genus=False):
        sp.add_argument("--p", type=int, action="append", required=need_p, help="even level (repeatable)")
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--no-cache", action="store_true", help="recompute instead of reading the disk cache")
        if genus:
            sp.add_argument("--genus", type=int, default=None)
        return sp

    sp = common(sub.add_parser("scan-genericity", help="scan tetrahedron coefficients for zeros"))
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--numeric-first", action="store_true")
    sp.set_defaults(fn=cmd_scan)

    sp = common(sub.add_parser("decompose", help="genus-1 invariant subspaces"), genus=True)
    sp.add_argument("--exact", action="store_true")
    sp.set_defaults(fn=cmd_decompose, genus=1)

    common(sub.add_parser("cyclicity", help="is the vacuum vector cyclic at genus 1")).set_defaults(fn=cmd_cyclicity)

    sp = common(sub.add_parser("certify", help="twist-class certificates"), genus=True)
    sp.set_defaults(fn=cmd_certify, genus=2)

    sp = common(sub.add_parser("homology-check", help="group algebra identities"), need_p=False, genus=True)
    sp.set_defaults(fn=cmd_homology, genus=2)

    sp = common(sub.add_parser("paper-suite", help="run every check"), need_p=False, genus=True)
    sp.set_defaults(fn=cmd_suite)

    sp = common(sub.add_parser("eval-p", help="evaluate P at a pair of roots of unity"), need_p=False)
    sp.add_argument("n1", type=int)
    sp.add_argument("n2", type=int)
    sp.add_argument("--e1", type=int, default=1)
    sp.add_argument("--e2", type=int, default=1)
    sp.add_argument("--corrupt", type=int, default=None, metavar="INDEX",
                    help="perturb one coefficient (negative control)")
    sp.set_defaults(fn=cmd_eval_p)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "no_cache", False):
        os.environ["SKEINRT_NO_DISK_CACHE"] = "1"
    try:
        return args.fn(args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
