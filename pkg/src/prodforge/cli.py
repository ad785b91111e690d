"""prodforge command line.

Exit codes: 0 pass, 1 verification failure, 2 policy refusal,
3 input or parameter error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import catalog
from .coefficients import (
    CertificationResult,
    Kind,
    closed_table,
    compare_tables,
    solve_triangular,
    table_to_json,
    table_to_tsv,
)
from .errors import PolicyRefusal, ProdforgeError
from .evaluator import abel_evaluate, partial_sum
from .series import FactorKind, series_from_json, to_cos_product, to_product, trig_to_product

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_POLICY = 2
EXIT_INPUT = 3

SCHEMA = "prodforge/1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(obj: dict, out) -> None:
    obj = {"schema": SCHEMA, **obj}
    out.write(json.dumps(_jsonable(obj), sort_keys=True) + "\n")


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _kind_and_s(args) -> tuple:
    kind = Kind.parse(args.kind)
    return kind, (args.s if kind.needs_s else None)


def _format(args) -> str:
    return "json" if getattr(args, "json", False) else "tsv"


# ---------------------------------------------------------------- subcommands


def cmd_coeffs(args, out) -> int:
    kind, s = _kind_and_s(args)
    table = closed_table(kind, args.max, s)
    out.write(table_to_json(table) if _format(args) == "json" else table_to_tsv(table))
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    kind, s = _kind_and_s(args)
    closed = closed_table(kind, args.max, s)
    solved = solve_triangular(kind, args.max, s)
    if args.inject_mismatch is not None:
        values = list(solved.values)
        values[args.inject_mismatch - 1] += 1
        solved = type(solved)(solved.kind, solved.limit, tuple(values), solved.s, solved.provenance)
    result: CertificationResult = compare_tables(closed, solved)
    if _format(args) == "json":
        _emit(
            {
                "kind": kind.value,
                "s": s,
                "limit": result.limit,
                "equal": result.equal_count,
                "first_mismatch": result.first_mismatch,
                "certified": result.ok,
            },
            out,
        )
    elif result.ok:
        out.write(f"certified: {result.equal_count}/{result.limit} equal\n")
    else:
        n = result.first_mismatch
        out.write(
            f"MISMATCH: first at n={n} (closed {closed[n]} vs solver {solved[n]}); "
            f"{result.equal_count}/{result.limit} equal\n"
        )
    return EXIT_OK if result.ok else EXIT_FAIL


def _params_from_args(args, entry) -> dict:
    params = {}
    for name in entry.params:
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if getattr(args, "N", None) is not None and entry.id in ("ZETA_A", "ZETA_B"):
        params["N"] = args.N
    return params


def _verify_one(entry, params, K, tol, args, out, assert_mode: bool) -> int:
    if entry.validity == catalog.BOUNDARY:
        if assert_mode:
            raise PolicyRefusal(f"{entry.id} is boundary-experimental and cannot be asserted")
        xs = args.xs or [0.9, 0.99, 0.999]
        report = catalog.check_identity(entry.id, params, assert_mode=False, abel_xs=xs)
        _emit(report.to_dict(), out)
        return EXIT_OK
    report = catalog.check_identity(entry.id, params, K, tol, as_printed=args.as_printed)
    row = report.to_dict()
    row["tol"] = tol
    _emit(row, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args, out) -> int:
    if args.all or args.profile:
        return _verify_all(args, out)
    if not args.id:
        raise ProdforgeError("verify needs --id, --all or --profile")
    entry = catalog.get_identity(args.id)
    tol = 1e-9 if args.tol is None else args.tol
    return _verify_one(entry, _params_from_args(args, entry), args.K, tol, args, out, args.assert_)


def _verify_all(args, out) -> int:
    if args.profile and args.profile != "desk":
        raise ProdforgeError(f"unknown profile {args.profile!r}")
    jobs = []
    if args.profile == "desk":
        jobs = [(catalog.get_identity(i), p, K, tol) for i, p, K, tol in catalog.DESK_PROFILE]
        jobs.sort(key=lambda job: list(catalog.REGISTRY).index(job[0].id))
    else:
        tol = 1e-9 if args.tol is None else args.tol
        for entry in catalog.list_identities():
            for point in entry.points or ({},):
                jobs.append((entry, point, point.get("K"), tol))
    seen_boundary = set()
    code = EXIT_OK
    for entry in catalog.list_identities():
        if entry.validity == catalog.BOUNDARY and entry.id not in seen_boundary:
            seen_boundary.add(entry.id)
            _emit({"id": entry.id, "status": "SKIPPED-EXPERIMENTAL"}, out)
            continue
        for job_entry, params, K, tol in jobs:
            if job_entry.id != entry.id:
                continue
            report = catalog.check_identity(entry.id, params, K, tol, as_printed=args.as_printed)
            row = report.to_dict()
            row["tol"] = tol
            _emit(row, out)
            if not report.passed:
                code = EXIT_FAIL
    return code


_TARGETS = {
    "minus": FactorKind.MINUS,
    "plus": FactorKind.PLUS,
    "ratio": FactorKind.RATIO_ODD,
    "cos-minus": FactorKind.COS_MINUS,
    "cos-plus": FactorKind.COS_PLUS,
    "cos-ratio": FactorKind.COS_RATIO,
}


def cmd_transform(args, out) -> int:
    try:
        text = Path(args.series_file).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProdforgeError(f"cannot read series file: {exc}")
    series = series_from_json(text)
    target = _TARGETS[args.target]
    if target.is_cos:
        if (args.theta is None) == (args.x is None):
            raise ProdforgeError("cosine targets need exactly one of --theta (power series) or --x (cosine series)")
        if args.theta is not None:
            form = to_cos_product(series, args.theta, target, args.K)
        else:
            form = trig_to_product(series, args.x, target, args.K)
    else:
        form = to_product(series, target, args.K)
    out.write(form.to_json() + "\n")
    return EXIT_OK


def cmd_stirling(args, out) -> int:
    report = catalog.stirling_ratio(args.n, args.terms, args.K, args.tol, as_printed=args.as_printed)
    row = report.to_dict()
    row["tol"] = args.tol
    _emit(row, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_zeta(args, out) -> int:
    kind = args.kind.lower()
    if kind not in ("a", "b"):
        raise ProdforgeError(f"zeta --kind must be a or b, got {args.kind!r}")
    s = args.s
    ps = partial_sum("A_S" if kind == "a" else "B_S", s, args.N)
    zeta = catalog.zeta_reference(s)
    if kind == "a":
        target = 1.0 / zeta
        tail = ps.tail_bound
    else:
        target = 1.0 / ((1.0 - 2.0 ** (1.0 - s)) * zeta)
        tail = catalog.b_s_tail_bound(s, args.N)
    tol = 2.0 * tail if args.tol is None else args.tol
    diff = abs(ps.value - target)
    _emit(
        {
            "kind": kind,
            "s": s,
            "N": args.N,
            "sum": ps.value,
            "target": target,
            "diff": diff,
            "tail_bound": tail,
            "tol": tol,
            "passed": diff <= tol,
        },
        out,
    )
    return EXIT_OK if diff <= tol else EXIT_FAIL


def cmd_abel(args, out) -> int:
    rows = abel_evaluate(args.id, args.xs, args.theta)
    if _format(args) == "json":
        for r in rows:
            _emit({"id": args.id, "x": r.x, "K": r.K, "lhs": r.lhs, "target": r.target, "residual": r.residual}, out)
    else:
        out.write("x\tK\tlhs\ttarget\tresidual\n")
        for r in rows:
            out.write(f"{r.x!r}\t{r.K}\t{r.lhs!r}\t{r.target!r}\t{r.residual!r}\n")
    return EXIT_OK


def cmd_list(args, out) -> int:
    for entry in catalog.list_identities():
        if _format(args) == "json":
            _emit(entry.summary(), out)
        else:
            out.write(f"{entry.id}\t{entry.validity}\t{entry.status}\t{entry.anchor}\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _floats(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_format(p) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="line-delimited JSON output")
    group.add_argument("--tsv", action="store_true", help="tab-separated output (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prodforge", description=__doc__.splitlines()[0])
    parser.add_argument("--sieve-limit", type=int, help="override PRODFORGE_SIEVE_LIMIT")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", help="closed-form coefficient table")
    p.add_argument("--kind", required=True, help="a, b, a_s or b_s")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--s", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("oracle", help="solve the triangular system and certify the closed form")
    p.add_argument("--kind", required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--inject-mismatch", type=int, metavar="N", help=argparse.SUPPRESS)
    _add_format(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check catalog identities")
    p.add_argument("--id")
    p.add_argument("--all", action="store_true")
    p.add_argument("--profile", help="named parameter set (desk)")
    p.add_argument("--x", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--J", type=int)
    p.add_argument("--s", type=float)
    p.add_argument("--N", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--xs", type=_floats, help="Abel probe points for boundary identities")
    p.add_argument("--assert", dest="assert_", action="store_true", help="require a pass/fail verdict")
    p.add_argument("--as-printed", action="store_true", help="use the uncorrected variant")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="series file to product form")
    p.add_argument("series_file")
    p.add_argument("--target", required=True, choices=sorted(_TARGETS))
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--theta", type=float)
    p.add_argument("--x", type=float)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("stirling", help="squared Stirling ratio as a product")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--terms", type=int, default=5)
    p.add_argument("--K", type=int, default=25)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--as-printed", action="store_true")
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("zeta", help="partial sums against 1/zeta(s) and 1/eta(s)")
    p.add_argument("--kind", required=True, help="a or b")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("abel", help="x -> 1 traces for boundary identities")
    p.add_argument("--id", required=True)
    p.add_argument("--xs", type=_floats, required=True)
    p.add_argument("--theta", type=float)
    _add_format(p)
    p.set_defaults(func=cmd_abel)

    p = sub.add_parser("list", help="list catalog identities")
    _add_format(p)
    p.set_defaults(func=cmd_list)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = os.environ.get("PRODFORGE_SIEVE_LIMIT")
    if args.sieve_limit is not None:
        os.environ["PRODFORGE_SIEVE_LIMIT"] = str(args.sieve_limit)
    try:
        return args.func(args, out)
    except PolicyRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_POLICY
    except ProdforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        # main() may run in-process; don't leak the override to later callers
        if args.sieve_limit is not None:
            if previous is None:
                os.environ.pop("PRODFORGE_SIEVE_LIMIT", None)
            else:
                os.environ["PRODFORGE_SIEVE_LIMIT"] = previous


if __name__ == "__main__":
    sys.exit(main())
