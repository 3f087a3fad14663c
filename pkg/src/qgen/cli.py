"""Command-line front end: derivation, verification, evaluation, region, sweep.

Exit codes: 0 success or informational, 1 verification failure, 2 internal or
dependency error, 64 usage error.  Identical invocations produce byte-identical
output: term order is fixed by the canonical monomial order and floats are
formatted with 17 significant digits (QGEN_FLOAT_DIGITS overrides the digit
count).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from .engine import (
    FIRST_ORDER_G,
    FULL_G,
    MODES,
    closed_form_term,
    compute_q,
    reconcile_fifth_order,
    verify_even_order,
)
from .poly import diff_terms
from .errors import DependencyError, DomainError, NoAdmissibleSolutionError, \
    OutsideConvergenceRegionError
from .params import EvalParams, PhasePoint
from .render import qseries_json_obj, qseries_latex, qseries_text
from .summation import convergence_margin, boundary_p, partial_sum, q_closed, sweep_rows

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INTERNAL = 2
EXIT_USAGE = 64

FULL_G_ORDER_CAP = 8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--g", type=float, default=0.1, help="cubic coupling (default 0.1)")
    parser.add_argument("--lambda", dest="lam", type=float, default=0.1,
                        help="quartic coupling, >= 0 (default 0.1)")
    parser.add_argument("--mu", type=float, default=1.0, help="oscillator frequency (default 1)")
    parser.add_argument("--epsilon", type=float, default=1.0,
                        help="series bookkeeping parameter (default 1)")
    parser.add_argument("--hbar", type=float, default=1.0, help="Planck constant (default 1)")


def _add_output_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default="-", help="output path (default: stdout)")


def build_parser() -> _Parser:
    parser = _Parser(prog="qgen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("derive", parents=[], help="compute generators Q_1 .. Q_{2n+1}")
    p.add_argument("--order", type=_nonneg_int, required=True, help="highest index n")
    p.add_argument("--mode", choices=MODES, default=FIRST_ORDER_G)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--force", action="store_true",
                   help=f"lift the full-g order cap ({FULL_G_ORDER_CAP})")
    _add_output_flag(p)

    p = sub.add_parser("verify-closed-form",
                       help="check the closed-form general term against the recurrence")
    p.add_argument("--max-n", type=_nonneg_int, default=12)
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_output_flag(p)

    p = sub.add_parser("verify-even-orders",
                       help="check that even-order coefficients vanish identically")
    p.add_argument("--max-order", type=_nonneg_int, default=4,
                   help="highest even order to assemble (default 4)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_output_flag(p)

    p = sub.add_parser("eval", help="evaluate the summed generator at a point")
    _add_param_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--terms", type=_nonneg_int, default=50,
                   help="last summed order index N (default 50)")
    p.add_argument("--strict", action="store_true",
                   help="treat a point outside the convergence region as an error")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_output_flag(p)

    p = sub.add_parser("region", help="emit the convergence boundary p_bound(x) as CSV")
    _add_param_flags(p)
    p.add_argument("--x", type=float, default=None, help="single x value")
    p.add_argument("--x-min", type=float, default=-1.0)
    p.add_argument("--x-max", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=101)
    _add_output_flag(p)

    p = sub.add_parser("sweep", help="emit a convergence error map over a grid as CSV")
    _add_param_flags(p)
    p.add_argument("--x-min", type=float, default=-1.5)
    p.add_argument("--x-max", type=float, default=1.5)
    p.add_argument("--p-min", type=float, default=-1.5)
    p.add_argument("--p-max", type=float, default=1.5)
    p.add_argument("--nx", type=int, default=41)
    p.add_argument("--np", type=int, default=41)
    p.add_argument("--terms", type=_nonneg_int, default=30)
    _add_output_flag(p)

    return parser


def _float_digits() -> int:
    raw = os.environ.get("QGEN_FLOAT_DIGITS", "17")
    try:
        digits = int(raw)
    except ValueError:
        raise _UsageError(f"QGEN_FLOAT_DIGITS must be an integer, got {raw!r}")
    if not 1 <= digits <= 17:
        raise _UsageError(f"QGEN_FLOAT_DIGITS must lie in 1..17, got {digits}")
    return digits


def _fmt(value: float | None, digits: int) -> str:
    if value is None:
        return "nan"
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, f".{digits}g")


def _json_number(value: float | None):
    if value is None or math.isnan(value) or math.isinf(value):
        return None
    return value


def _params_from_args(args) -> EvalParams:
    try:
        return EvalParams(g=args.g, lam=args.lam, mu=args.mu,
                          epsilon=args.epsilon, hbar=args.hbar)
    except DomainError as exc:
        raise _UsageError(str(exc))


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    if count < 2:
        raise _UsageError("at least 2 samples are required")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise _UsageError("grid bounds must be finite")
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _cmd_derive(args, digits: int):
    if args.mode == FULL_G and args.order > FULL_G_ORDER_CAP and not args.force:
        raise _UsageError(
            f"full-g derivation is capped at order {FULL_G_ORDER_CAP}; pass --force to override"
        )
    series = compute_q(args.order, args.mode)
    if args.format == "json":
        return EXIT_OK, json.dumps(qseries_json_obj(series), indent=2)
    if args.format == "latex":
        return EXIT_OK, qseries_latex(series)
    return EXIT_OK, qseries_text(series)


def _closed_form_checks(max_n: int):
    series = compute_q(max_n, FIRST_ORDER_G)
    checks = []
    for n in range(max_n + 1):
        recurrence = series.term(n)
        closed = closed_form_term(n)
        diffs = diff_terms(closed, recurrence)
        detail = ""
        if diffs:
            m, c_closed, c_rec = diffs[0]
            detail = (f"first differing monomial x^{m.x} p^{m.p} g^{m.g} lam^{m.lam} "
                      f"mu^{m.mu} hbar^{m.hbar}: closed form {c_closed}, recurrence {c_rec}")
        checks.append({
            "name": f"closed-form n={n} (order {2 * n + 1})",
            "passed": not diffs,
            "detail": detail,
        })
    return checks


def _even_order_checks(max_even_order: int):
    checks = []
    top_m = max_even_order // 2
    if top_m < 1:
        return checks
    for mode in (FULL_G, FIRST_ORDER_G):
        series = compute_q(top_m - 1, mode)
        for m in range(1, top_m + 1):
            residual = verify_even_order(m, series)
            checks.append({
                "name": f"even order {2 * m} residual ({mode})",
                "passed": not residual,
                "detail": "" if not residual else f"residual: {residual.to_text()}",
            })
    return checks


def _verify_report(checks: list[dict], reconciliation: list[dict] | None, digits: int,
                   subcommand: str, as_json: bool):
    passed = all(c["passed"] for c in checks)
    code = EXIT_OK if passed else EXIT_VERIFY_FAILED
    if as_json:
        obj = {
            "subcommand": subcommand,
            "passed": passed,
            "checks": checks,
        }
        if reconciliation is not None:
            obj["q5_reconciliation"] = reconciliation
        return code, json.dumps(obj, indent=2)
    lines = []
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        line = f"{status}  {c['name']}"
        if c["detail"]:
            line += f"  [{c['detail']}]"
        lines.append(line)
    if reconciliation is not None:
        mismatches = [r for r in reconciliation if not r["match"]]
        lines.append("")
        lines.append("fifth-order reconciliation against the printed reference "
                     f"({len(mismatches)} coefficient discrepancies; informational):")
        for r in reconciliation:
            mark = "ok      " if r["match"] else "DIFFERS "
            lines.append(f"  {mark}{r['monomial']}: engine {r['engine']}, printed {r['printed']}")
    lines.append("")
    lines.append(f"result: {'PASS' if passed else 'FAIL'} ({len(checks)} checks)")
    return code, "\n".join(lines)


def _cmd_verify_closed_form(args, digits: int):
    checks = _closed_form_checks(args.max_n)
    checks += _even_order_checks(2 * min(args.max_n, 4))
    reconciliation = reconcile_fifth_order()
    return _verify_report(checks, reconciliation, digits, "verify-closed-form",
                          args.format == "json")


def _cmd_verify_even_orders(args, digits: int):
    checks = _even_order_checks(args.max_order)
    if not checks:
        raise _UsageError("--max-order must be at least 2")
    return _verify_report(checks, None, digits, "verify-even-orders",
                          args.format == "json")


def _cmd_eval(args, digits: int):
    params = _params_from_args(args)
    point = PhasePoint(args.x, args.p)
    margin = convergence_margin(params, point)
    psum = partial_sum(params, point, args.terms)
    try:
        qc = q_closed(params, point)
        flag = "converged"
        abs_err = abs(qc - psum.value)
        rel_err = abs_err / abs(qc) if qc != 0 else None
    except OutsideConvergenceRegionError:
        qc = None
        flag = "diverged"
        abs_err = None
        rel_err = None

    if args.format == "json":
        obj = {
            "subcommand": "eval",
            "params": {"g": params.g, "lambda": params.lam, "mu": params.mu,
                       "epsilon": params.epsilon, "hbar": params.hbar},
            "point": {"x": point.x, "p": point.p},
            "terms": args.terms,
            "q_closed": _json_number(qc),
            "partial_sum": psum.value,
            "last_increment": psum.last_increment,
            "abs_err": _json_number(abs_err),
            "rel_err": _json_number(rel_err),
            "margin": _json_number(margin),
            "flag": flag,
        }
        text = json.dumps(obj, indent=2)
    else:
        lines = [
            f"q_closed = {_fmt(qc, digits)}",
            f"partial_sum[N={args.terms}] = {_fmt(psum.value, digits)}",
            f"last_increment = {_fmt(psum.last_increment, digits)}",
            f"abs_err = {_fmt(abs_err, digits)}",
            f"rel_err = {_fmt(rel_err, digits)}",
            f"margin = {_fmt(margin, digits)}",
            f"flag = {flag}",
        ]
        text = "\n".join(lines)
    if args.strict and flag == "diverged":
        print(f"qgen: error: point is outside the convergence region (margin {margin:.6g})",
              file=sys.stderr)
        return EXIT_INTERNAL, text
    return EXIT_OK, text


def _cmd_region(args, digits: int):
    params = _params_from_args(args)
    if params.lam == 0:
        raise _UsageError("region has no finite boundary at lambda = 0; "
                          "the series converges on the whole phase plane")
    xs = [args.x] if args.x is not None else _linspace(args.x_min, args.x_max, args.samples)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "p_bound"])
    for x in xs:
        writer.writerow([_fmt(x, digits), _fmt(boundary_p(params, x), digits)])
    return EXIT_OK, buf.getvalue().rstrip("\n")


def _cmd_sweep(args, digits: int):
    params = _params_from_args(args)
    xs = _linspace(args.x_min, args.x_max, args.nx)
    ps = _linspace(args.p_min, args.p_max, args.np)
    rows = sweep_rows(params, xs, ps, args.terms)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "p", "margin", "q_closed", "partial_sum_N", "abs_err", "flag"])
    for r in rows:
        writer.writerow([
            _fmt(r.x, digits), _fmt(r.p, digits), _fmt(r.margin, digits),
            _fmt(r.q_closed, digits), _fmt(r.partial_sum, digits),
            _fmt(r.abs_err, digits), r.flag,
        ])
    return EXIT_OK, buf.getvalue().rstrip("\n")


_HANDLERS = {
    "derive": _cmd_derive,
    "verify-closed-form": _cmd_verify_closed_form,
    "verify-even-orders": _cmd_verify_even_orders,
    "eval": _cmd_eval,
    "region": _cmd_region,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        digits = _float_digits()
        code, text = _HANDLERS[args.subcommand](args, digits)
    except _UsageError as exc:
        print(f"qgen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DependencyError, NoAdmissibleSolutionError, DomainError) as exc:
        print(f"qgen: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
