"""Command-line driver: ``descent {build,marks,cartan,extquiver,classify,verify-fixture}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .cache import Cache
from .classify import cross_check, lookup_verdict
from .coxeter import CoxeterType
from .errors import BudgetExceeded, DescentError, OutOfScope, UnsupportedType
from .fixtures import load_fixture, match_quiver, shipped_fixtures
from .rep import FieldAnalysis

EXIT_INCONSISTENT, EXIT_SCOPE, EXIT_BUDGET = 1, 2, 3


def _prime_or_zero(text: str) -> int:
    p = int(text)
    if p != 0 and (p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1))):
        raise argparse.ArgumentTypeError(f"{p} is neither 0 nor a prime")
    return p


def _matrix_csv(labels, matrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(labels))
    for lab, row in zip(labels, matrix):
        w.writerow([lab] + [int(x) for x in row])
    return buf.getvalue()


def _matrix_json(labels, matrix) -> str:
    return json.dumps({"labels": list(labels), "rows": [[int(x) for x in r] for r in matrix]},
                      indent=1) + "\n"


def _emit(args, name: str, text: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ctype(args) -> CoxeterType:
    try:
        return CoxeterType.parse(args.type, args.rank)
    except UnsupportedType as exc:
        raise OutOfScope(str(exc)) from exc


def _cache(args) -> Cache:
    return Cache(args.cache, enabled=not args.no_cache)


def _algebra(args):
    return _cache(args).algebra(_ctype(args), args.allow_large)


def cmd_build(args) -> int:
    alg = _algebra(args)
    ct = alg.system.ctype
    summary = {"type": ct.name, "order": alg.system.size, "roots": alg.system.N,
               "dimension": alg.dim, "classes": len(alg.reps),
               "representatives": [alg.display(K) for K in alg.reps]}
    _emit(args, f"{ct.tag}_summary.json", json.dumps(summary, indent=1) + "\n")
    if args.out:
        lines = "".join(json.dumps({"J": J, "K": K, "terms": alg.sc.terms(J, K)}) + "\n"
                        for J in range(alg.dim) for K in range(alg.dim))
        _emit(args, f"{ct.tag}_constants.jsonl", lines)
    return 0


def cmd_marks(args) -> int:
    alg = _algebra(args)
    labels = [alg.display(K) for K in alg.reps]
    table = alg.marks_table()
    text = _matrix_json(labels, table) if args.format == "json" else _matrix_csv(labels, table)
    _emit(args, f"{alg.system.ctype.tag}_marks.{'json' if args.format == 'json' else 'csv'}", text)
    return 0


def cmd_cartan(args) -> int:
    alg = _algebra(args)
    fa = FieldAnalysis(alg, args.p)
    fmt = "json" if args.format == "json" else "csv"
    text = _matrix_json(fa.labels, fa.cartan) if fmt == "json" else _matrix_csv(fa.labels, fa.cartan)
    _emit(args, f"{alg.system.ctype.tag}_p{args.p}_cartan.{fmt}", text)
    return 0


def cmd_extquiver(args) -> int:
    alg = _algebra(args)
    q = FieldAnalysis(alg, args.p).quiver
    tag = f"{alg.system.ctype.tag}_p{args.p}_quiver"
    if args.format == "magma":
        _emit(args, tag + ".txt", q.to_magma())
    elif args.format == "json":
        _emit(args, tag + ".json", q.to_json() + "\n")
    else:
        _emit(args, tag + ".csv", _matrix_csv(q.labels, q.arrows))
    return 0


def cmd_classify(args) -> int:
    ctype = _ctype(args)
    lookup = lookup_verdict(ctype, args.p)
    check = cross_check(FieldAnalysis(_cache(args).algebra(ctype, args.allow_large), args.p))
    if check.status == "AGREE":
        line = f"{lookup.verdict} ({lookup.certificate}; certificate: {check.certificate.certificate})"
    elif check.status == "CERTIFICATE_NONE":
        why = check.reason or "not on the expected list"
        line = f"{lookup.verdict} ({lookup.certificate}; certificate: none, {why})"
    else:
        line = (f"CONFLICT: lookup {lookup.verdict}, "
                f"certificate {check.certificate.verdict} ({check.certificate.certificate})")
    print(line)
    if check.status == "CONFLICT":
        return EXIT_INCONSISTENT
    return 0


def cmd_verify_fixture(args) -> int:
    fixtures = [load_fixture(f) for f in args.files] if args.files else shipped_fixtures()
    cache = _cache(args)
    failed = False
    for fx in fixtures:
        ctype = CoxeterType.parse(fx.family, fx.rank)
        if ctype.order() > 100_000 and not args.allow_large:
            print(f"SKIP {fx.name} (needs --allow-large)")
            continue
        alg = cache.algebra(ctype, args.allow_large)
        for p in fx.check:
            q = FieldAnalysis(alg, p).quiver
            totals = (q.vertex_count, q.arrow_count) == (fx.vertices, fx.arrows)
            orient = match_quiver(q, fx) if totals else None
            ok = totals and orient is not None
            failed |= not ok
            detail = f"orientation {orient}" if ok else f"computed {q.vertex_count} vertices, {q.arrow_count} arrows"
            print(f"{'PASS' if ok else 'FAIL'} {fx.name} p={p}: {detail}")
    return EXIT_INCONSISTENT if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="directory for artifacts (default: stdout)")
    common.add_argument("--cache", help="cache directory (default: $DESCENT_CACHE or ~/.cache/descent)")
    common.add_argument("--no-cache", action="store_true", help="rebuild and do not write the cache")
    common.add_argument("--allow-large", action="store_true", help="permit groups above the size budget")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", required=True, choices=list("ABDIEFH"), type=str.upper)
    typed.add_argument("--rank", required=True, type=int, help="rank, or m for I2(m)")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--p", type=_prime_or_zero, default=0, help="characteristic (0 or a prime)")

    parser = argparse.ArgumentParser(prog="descent", description="Descent algebras of finite Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common, typed], help="enumerate W and its structure constants")
    b.set_defaults(func=cmd_build)
    m = sub.add_parser("marks", parents=[common, typed], help="table of marks")
    m.add_argument("--format", choices=["csv", "json"], default="csv")
    m.set_defaults(func=cmd_marks)
    c = sub.add_parser("cartan", parents=[common, typed, field], help="Cartan matrix")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.set_defaults(func=cmd_cartan)
    e = sub.add_parser("extquiver", parents=[common, typed, field], help="Ext-quiver")
    e.add_argument("--format", choices=["csv", "json", "magma"], default="magma")
    e.set_defaults(func=cmd_extquiver)
    k = sub.add_parser("classify", parents=[common, typed, field], help="representation type")
    k.set_defaults(func=cmd_classify)
    v = sub.add_parser("verify-fixture", parents=[common], help="compare Ext-quivers with reference files")
    v.add_argument("files", nargs="*", help="fixture files (default: the shipped set)")
    v.set_defaults(func=cmd_verify_fixture)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OutOfScope as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DescentError as exc:
        print(f"inconsistency: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
