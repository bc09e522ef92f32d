"""Command-line interface: ``tnnfq <verb> [options]``.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 work cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import closed_forms as cf
from . import verify
from .finite_field import FieldError, make_field
from .grassmannian import (Filter, WorkCapExceeded, canonicalize, count, count_table,
                           dual, enumerate_subspaces, search_space, work_cap)
from .matrix import MatrixError, MatrixFq
from .structures import Matroid, fixed_points, is_positroid

EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 1, 2, 3
PROGRESS_THRESHOLD = 10 ** 7


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _field_args(p: argparse.ArgumentParser):
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--r", type=int, default=1, help="extension degree")
    p.add_argument("--modulus", type=_int_list, default=None,
                   help="irreducible modulus, constant term first, e.g. 1,0,1")


def _work_args(p: argparse.ArgumentParser):
    p.add_argument("--work-cap", type=int, default=None,
                   help="node cap (default: TNN_WORK_CAP or 10^9)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)


def _kn_args(p: argparse.ArgumentParser, filter_default="tnn"):
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", choices=[f.value for f in Filter], default=filter_default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tnnfq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="count points of Gr_{k,n}(F_q)")
    _kn_args(p)
    _field_args(p)
    _work_args(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("enumerate", help="stream canonical matrices as JSON lines")
    _kn_args(p)
    _field_args(p)
    _work_args(p)
    p.add_argument("--output", default=None)

    p = sub.add_parser("table", help="count triangle for 0 <= k <= n <= max-n")
    _field_args(p)
    _work_args(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--filter", choices=[f.value for f in Filter], default="tnn")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", choices=sorted(verify.SUITES) + ["all"], required=True)
    p.add_argument("--max-n", type=int, default=None)

    p = sub.add_parser("fixed-points", help="fixed points of the cyclic shift")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _field_args(p)
    _work_args(p)
    p.add_argument("--tnn", action="store_true", help="restrict to the TNN part")

    p = sub.add_parser("positroid", help="is a matroid an F_q-positroid?")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bases", required=True,
                   help="bases separated by ';', elements by ',', e.g. 1,2;2,3;3,4;1,4")
    _field_args(p)
    _work_args(p)

    p = sub.add_parser("closed-form", help="evaluate a closed-form count")
    p.add_argument("--formula", required=True,
                   choices=["f3-k2", "f5-k2", "k1-nonneg", "k1-pos", "chebyshev",
                            "tile-coeff"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--r", type=int, default=1)

    p = sub.add_parser("dual", help="alt of the orthogonal complement of a row span")
    p.add_argument("--matrix", required=True, help="rows separated by ';', e.g. 1,0,2,2;0,1,1,0")
    _field_args(p)
    return parser


def _field(args):
    try:
        return make_field(args.p, args.r, modulus=args.modulus)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _cap(args) -> int:
    return args.work_cap if args.work_cap is not None else work_cap()


def _check_kn(args):
    if not 0 <= args.k <= args.n:
        raise UsageError(f"need 0 <= k <= n, got k={args.k}, n={args.n}")


def _progress(k, n, q):
    if search_space(k, n, q) < PROGRESS_THRESHOLD:
        return None

    def report(done, total):
        print(f"[tnnfq] k={k} n={n} q={q}: pivot set {done}/{total}", file=sys.stderr)
    return report


def cmd_count(args, out):
    _check_kn(args)
    F = _field(args)
    c = count(args.k, args.n, F, args.filter, cap=_cap(args), workers=args.workers,
              progress=_progress(args.k, args.n, F.q))
    if args.format == "json":
        print(json.dumps({"k": args.k, "n": args.n, "q": F.q, "filter": args.filter,
                          "count": c}), file=out)
    else:
        print(c, file=out)
    return 0


def cmd_enumerate(args, out):
    _check_kn(args)
    F = _field(args)
    fh = open(args.output, "w") if args.output else out
    try:
        for V in enumerate_subspaces(args.k, args.n, F, args.filter, cap=_cap(args)):
            fh.write(json.dumps(V.to_dict()) + "\n")
    finally:
        if args.output:
            fh.close()
    return 0


def cmd_table(args, out):
    F = _field(args)
    table = count_table(F, args.max_n, args.filter, cap=_cap(args), workers=args.workers)
    text = table.to_csv() if args.format == "csv" else json.dumps(table.to_dict()) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_verify(args, out):
    names = sorted(verify.SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        rep = verify.run_suite(name, args.max_n)
        print(json.dumps({"suite": rep["suite"], "n_range": rep["n_range"],
                          "status": rep["status"]}), file=out)
        if name == "conjecture-scan" and rep["flagged"]:
            print(f"[tnnfq] conjecture-scan flagged rows: {rep['flagged']}", file=sys.stderr)
        if rep["status"] != "pass":
            status = EXIT_FAIL
    return status


def cmd_fixed_points(args, out):
    F = _field(args)
    if not 0 <= args.k <= args.n:
        raise UsageError("need 0 <= k <= n")
    for V in fixed_points(args.k, args.n, F, restrict_tnn=args.tnn, cap=_cap(args)):
        print(json.dumps(V.to_dict()), file=out)
    return 0


def cmd_positroid(args, out):
    F = _field(args)
    try:
        bases = [_int_list(b) for b in args.bases.split(";") if b.strip()]
        M = Matroid.from_bases(args.n, args.k, bases)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    flag, witness = is_positroid(M, F, cap=_cap(args))
    print(json.dumps({"matroid": M.to_dict(), "field": F.to_dict(), "positroid": flag,
                      "witness": witness.to_dict() if witness else None}), file=out)
    return 0


def cmd_closed_form(args, out):
    f, n = args.formula, args.n
    try:
        if f == "f3-k2":
            value = cf.f3_k2(n, args.variant or 3)
        elif f == "f5-k2":
            value = cf.f5_k2(n, args.variant or 2)
        elif f in ("k1-nonneg", "k1-pos"):
            if args.p is None:
                raise UsageError("--p is required for k=1 formulas")
            F = make_field(args.p, args.r)
            value = cf.k1_nonneg(F, n) if f == "k1-nonneg" else cf.k1_pos(F, n)
        elif f == "chebyshev":
            value = cf.chebyshev_poly(n).to_list()
        else:
            value = cf.chebyshev_low_coeff(n)
    except (ValueError, FieldError) as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(value) if isinstance(value, list) else value, file=out)
    return 0


def cmd_dual(args, out):
    F = _field(args)
    rows = [_int_list(r) for r in args.matrix.split(";") if r.strip()]
    try:
        V = canonicalize(MatrixFq(F, rows))
    except (MatrixError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(dual(V).to_dict()), file=out)
    return 0


COMMANDS = {
    "count": cmd_count, "enumerate": cmd_enumerate, "table": cmd_table,
    "verify": cmd_verify, "fixed-points": cmd_fixed_points, "positroid": cmd_positroid,
    "closed-form": cmd_closed_form, "dual": cmd_dual,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        print(f"tnnfq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WorkCapExceeded as exc:
        print(f"tnnfq: {exc}", file=sys.stderr)
        return EXIT_CAP


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
