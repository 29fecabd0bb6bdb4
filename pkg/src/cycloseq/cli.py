"""Command-line workbench: generate periods, measure linear complexity,
dump class tables, run the identity suite, verify cells, sweep grids.

Data goes to stdout (or --output); diagnostics go to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import analysis, cyclotomy, gf2ext
from .gf2poly import period_lc_gcd, period_lc_massey
from .ntheory import ParameterError, PrimePowerCtx
from .sequence import SequenceParams, generate

JOBS_ENV = "CYCLOSEQ_JOBS"
OUTDIR_ENV = "CYCLOSEQ_OUTDIR"


def _add_param_flags(parser: argparse.ArgumentParser, need_b: bool = True) -> None:
    parser.add_argument("-p", "--prime", type=int, required=True, help="odd prime p")
    parser.add_argument("-n", "--exponent", type=int, default=1, help="power n of p (default 1)")
    parser.add_argument("-f", "--window", type=int, required=True,
                        help="even f dividing p-1 (p = e*f + 1)")
    if need_b:
        parser.add_argument("-b", "--shift", type=int, default=0,
                            help="window shift, 0 <= b < p**(n-1)*f (default 0)")
        parser.add_argument("--variant", choices=("s", "stilde"), default="s",
                            help="sequence family (default s)")
    parser.add_argument("--g-override", type=int, default=None,
                        help="explicit odd primitive root (default: deterministic choice)")


def _build_params(args: argparse.Namespace) -> SequenceParams:
    ctx = PrimePowerCtx.create(args.prime, args.exponent, args.window, args.g_override)
    return SequenceParams(ctx, args.shift, args.variant)


def _resolve_output(path: Optional[str]):
    if path is None or path == "-":
        return None
    p = Path(path)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    return p


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _cmd_gen(args: argparse.Namespace) -> int:
    seq = generate(_build_params(args))
    if args.format == "ascii":
        out = seq.to01() + "\n"
    elif args.format == "hex":
        out = seq.to_hex() + "\n"
    else:
        ctx = seq.params.ctx
        out = json.dumps({"p": ctx.p, "n": ctx.n, "f": ctx.f, "b": seq.params.b,
                          "variant": seq.params.variant, "period": len(seq),
                          "support": list(seq.support)}) + "\n"
    _emit(out, _resolve_output(args.output))
    return 0


def _read_period_bits(source: str) -> tuple[int, int]:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    bits = [c for c in text if not c.isspace()]
    if not bits or any(c not in "01" for c in bits):
        raise ParameterError("input must be a nonempty string of 0/1 characters")
    value = sum(1 << i for i, c in enumerate(bits) if c == "1")
    return value, len(bits)


def _cmd_lc(args: argparse.Namespace) -> int:
    if args.input is not None:
        value, length = _read_period_bits(args.input)
    else:
        if args.prime is None or args.window is None:
            raise ParameterError("lc needs either --input or the -p/-f parameter flags")
        seq = generate(_build_params(args))
        value, length = seq.value, len(seq)
    l_gcd = period_lc_gcd(value, length)
    l_bm, minpoly = period_lc_massey(value, length)
    out = (f"period={length}\n"
           f"linear_complexity_gcd={l_gcd}\n"
           f"linear_complexity_lfsr={l_bm}\n"
           f"minpoly_hex={minpoly.to_hex()}\n")
    _emit(out, _resolve_output(args.output))
    if l_gcd != l_bm:
        print("error: the two measurements disagree", file=sys.stderr)
        return 1
    return 0


def _cmd_classes(args: argparse.Namespace) -> int:
    ctx = PrimePowerCtx.create(args.prime, args.exponent, args.window, args.g_override)
    level = args.level if args.level is not None else ctx.n
    table = cyclotomy.build_class_table(ctx, level)
    _emit(json.dumps(cyclotomy.table_to_json_dict(table), indent=2) + "\n",
          _resolve_output(args.output))
    return 0


def _cmd_props(args: argparse.Namespace) -> int:
    ctx = PrimePowerCtx.create(args.prime, args.exponent, args.window, args.g_override)
    reports: list[gf2ext.Report] = []
    part = cyclotomy.verify_partitions(ctx, ctx.n)
    part_item = gf2ext.CheckItem("exact cover of both residue rings",
                                 part.modulus_pm + part.modulus_2pm,
                                 len(part.violations))
    reports.append(gf2ext.Report("partitions", [part_item]))
    try:
        field = gf2ext.build_field(ctx.p, ctx.n)
    except ParameterError as exc:
        print(f"note: {exc}", file=sys.stderr)
        field = None
    if field is not None:
        reports.append(gf2ext.verify_halfwindow_identities(field, ctx))
        reports.append(gf2ext.verify_decomposition(field, ctx, args.shift))
        try:
            reports.append(gf2ext.verify_nonvanishing(field, ctx, args.shift))
        except ParameterError as exc:
            print(f"note: {exc}", file=sys.stderr)
        for variant in ("s", "stilde"):
            reports.append(gf2ext.verify_simple_roots(field, SequenceParams(ctx, args.shift, variant)))
        table1 = cyclotomy.build_class_table(ctx, 1)
        c0, c1 = gf2ext.count_pair_sum_values(field, table1, ctx.u)
        e0, e1 = gf2ext.expected_pair_counts(ctx.v, ctx.f)
        fails = (e0 is not None and c0 != e0) + (e1 is not None and c1 != e1)
        note = f"count0={c0} (case {e0}), count1={c1} (case {e1})"
        reports.append(gf2ext.Report("window pair-sum counts",
                                     [gf2ext.CheckItem("counts match the case table", 2, fails, note)]))
    ok = all(rep.ok for rep in reports)
    if args.json:
        payload = {
            "p": ctx.p, "n": ctx.n, "f": ctx.f, "b": args.shift,
            "field_degree": field.degree if field else None,
            "reports": [{
                "title": rep.title,
                "items": [{"name": it.name, "checked": it.checked,
                           "failures": it.failures, "note": it.note} for it in rep.items],
            } for rep in reports],
            "ok": ok,
        }
        _emit(json.dumps(payload, indent=2) + "\n", _resolve_output(args.output))
    else:
        lines = []
        for rep in reports:
            lines.extend(rep.lines())
        lines.append("overall: " + ("pass" if ok else "FAIL"))
        _emit("\n".join(lines) + "\n", _resolve_output(args.output))
    return 0 if ok else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    params = _build_params(args)
    rec = analysis.verify_point(params, measure_limit=args.measure_limit)
    ctx = params.ctx
    lines = [
        f"p={rec.p} n={rec.n} f={rec.f} e={rec.e} b={rec.b} variant={rec.variant}",
        f"g={ctx.g} u={ctx.u} v={rec.v} ord_p(2)={rec.ord_p_2} "
        f"wieferich_level={ctx.wieferich_level}",
        f"predicted: {rec.predicted.kind} {rec.predicted.describe()} ({rec.predicted.provenance})",
        f"measured:  gcd={rec.measured_gcd} lfsr={rec.measured_bm}",
    ]
    if rec.conjecture_original is not None:
        lines.append(f"conjecture: original={rec.conjecture_original} "
                     f"corrected={rec.conjecture_corrected}")
    lines.append(f"verdict: {rec.verdict}")
    _emit("\n".join(lines) + "\n", _resolve_output(args.output))
    return 0 if not rec.hard_fail else 1


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParameterError(f"expected a comma-separated integer list, got {text!r}") from exc


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.check:
        return _check_report(Path(args.check))
    if args.default_grid:
        cells = analysis.default_grid(full_b=args.full_b)
    else:
        if not args.p_list:
            raise ParameterError("sweep needs --default-grid or --p-list")
        primes = _parse_int_list(args.p_list)
        exponents = _parse_int_list(args.n_list) if args.n_list else [1]
        f_values = _parse_int_list(args.f_list) if args.f_list else None
        b_values = _parse_int_list(args.b_list) if args.b_list else None
        variants = ("s", "stilde") if args.variant == "both" else (args.variant,)
        cells = analysis.default_grid(primes, exponents, f_values, b_values,
                                      variants, full_b=args.full_b)
    jobs = args.jobs if args.jobs is not None else int(os.environ.get(JOBS_ENV, "1"))
    report = analysis.sweep(cells, g_override=args.g_override,
                            measure_limit=args.measure_limit, jobs=jobs)
    if args.format == "csv":
        _emit(report.to_csv_text(), _resolve_output(args.output))
    else:
        _emit(json.dumps(report.to_json_obj(), indent=2) + "\n", _resolve_output(args.output))
    for note in report.skipped:
        print(f"skipped {note}", file=sys.stderr)
    fails = sum(1 for r in report.records if r.hard_fail)
    print(f"sweep: {len(report.records)} cells, {fails} hard failures, "
          f"{len(report.skipped)} skipped", file=sys.stderr)
    return 0 if report.all_pass else 1


def _check_report(path: Path) -> int:
    """Re-read a JSON sweep report and re-derive every row from scratch."""
    payload = json.loads(path.read_text())
    mismatches = 0
    for row in payload.get("rows", []):
        cell = (int(row["p"]), int(row["n"]), int(row["f"]), int(row["b"]), row["variant"])
        limit = None if row["measured"] != "" else analysis.DEFAULT_MEASURE_LIMIT
        res = analysis._verify_cell(((cell), None, limit))
        if isinstance(res, tuple):
            mismatches += 1
            print(f"check: row {cell} no longer computable: {res[1]}", file=sys.stderr)
            continue
        fresh = res.row()
        for col in analysis.CSV_COLUMNS:
            if str(fresh[col]) != str(row[col]):
                mismatches += 1
                print(f"check: row {cell} column {col}: stored {row[col]!r} "
                      f"recomputed {fresh[col]!r}", file=sys.stderr)
                break
    total = len(payload.get("rows", []))
    print(f"check: {total} rows, {mismatches} mismatches", file=sys.stderr)
    return 0 if mismatches == 0 and payload.get("all_pass", False) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycloseq",
        description="Generalized cyclotomic binary sequences of period 2*p**n: "
                    "generation, linear complexity, and structural verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit one period")
    _add_param_flags(p_gen)
    p_gen.add_argument("--format", choices=("ascii", "hex", "support"), default="ascii")
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_lc = sub.add_parser("lc", help="measure linear complexity two ways")
    p_lc.add_argument("-p", "--prime", type=int, default=None)
    p_lc.add_argument("-n", "--exponent", type=int, default=1)
    p_lc.add_argument("-f", "--window", type=int, default=None)
    p_lc.add_argument("-b", "--shift", type=int, default=0)
    p_lc.add_argument("--variant", choices=("s", "stilde"), default="s")
    p_lc.add_argument("--g-override", type=int, default=None)
    p_lc.add_argument("-i", "--input", default=None,
                      help="file of ASCII 0/1 bits, or '-' for stdin")
    p_lc.add_argument("-o", "--output", default=None)
    p_lc.set_defaults(func=_cmd_lc)

    p_classes = sub.add_parser("classes", help="dump one level's class table as JSON")
    _add_param_flags(p_classes, need_b=False)
    p_classes.add_argument("--level", type=int, default=None, help="level j (default n)")
    p_classes.add_argument("-o", "--output", default=None)
    p_classes.set_defaults(func=_cmd_classes)

    p_props = sub.add_parser("props", help="run the structural identity suite")
    _add_param_flags(p_props)
    p_props.add_argument("--json", action="store_true")
    p_props.add_argument("-o", "--output", default=None)
    p_props.set_defaults(func=_cmd_props)

    p_verify = sub.add_parser("verify", help="predict and measure one cell")
    _add_param_flags(p_verify)
    p_verify.add_argument("--measure-limit", type=int, default=analysis.DEFAULT_MEASURE_LIMIT)
    p_verify.add_argument("-o", "--output", default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="verify a parameter grid")
    p_sweep.add_argument("--default-grid", action="store_true")
    p_sweep.add_argument("--p-list", default=None)
    p_sweep.add_argument("--n-list", default=None)
    p_sweep.add_argument("--f-list", default=None)
    p_sweep.add_argument("--b-list", default=None)
    p_sweep.add_argument("--variant", choices=("s", "stilde", "both"), default="both")
    p_sweep.add_argument("--full-b", action="store_true",
                         help="sweep every b instead of {0, 1, d_n/2}")
    p_sweep.add_argument("--g-override", type=int, default=None)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--measure-limit", type=int, default=analysis.DEFAULT_MEASURE_LIMIT)
    p_sweep.add_argument("-j", "--jobs", type=int, default=None,
                         help=f"parallel workers (default ${JOBS_ENV} or 1)")
    p_sweep.add_argument("--check", default=None, metavar="REPORT_JSON",
                         help="re-validate a JSON report instead of sweeping")
    p_sweep.add_argument("-o", "--output", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
