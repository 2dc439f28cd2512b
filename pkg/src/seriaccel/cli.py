"""Command-line interface.

Subcommands::

    accelerate       build a transformation table and show selected approximants
    predict          predict unseen series coefficients
    error-terms      numeric error-term table (approximant minus function)
    transform-terms  numeric transformation-term table (approximant minus partial sum)
    reproduce        run an embedded reference experiment and diff the output

Exit codes: 0 success, 1 usage or breakdown error, 2 reference-value mismatch.
The ``SERIACCEL_PRECISION`` environment variable overrides the bigfloat
working precision (default 50 significant digits).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import golden
from .field import (
    BreakdownError,
    Field,
    ModeMismatchError,
    ParseError,
    RationalField,
    decimal_string,
    field_for_mode,
    scientific_string,
    to_fraction_string,
)
from .prediction import predict_coefficients
from .remainders import evaluate_error_terms, evaluate_transformation_terms
from .report import ReportRow, rows_to_csv, rows_to_json
from .series_library import builtin_series, resolve_series_spec
from .transforms import (
    DegeneratePadeError,
    SelectionError,
    aitken_table,
    classify_convergence,
    epsilon_cross_table,
    epsilon_table,
    iterated_theta_table,
    select_approximant,
    theta_table,
)

FAMILY_ORDER = ("aitken", "epsilon", "theta-iterated")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep 2 for golden diffs only
        raise _UsageError(f"{self.prog}: {message}")


def _env_digits() -> int:
    raw = os.environ.get("SERIACCEL_PRECISION", "50")
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"SERIACCEL_PRECISION must be an integer, got {raw!r}") from None


def _field(mode: str) -> Field:
    return field_for_mode(mode, digits=_env_digits())


def _render(field: Field, value, digits: int) -> str:
    if isinstance(field, RationalField):
        return to_fraction_string(value)
    return scientific_string(value, digits)


# ---------------------------------------------------------------------------
# accelerate

_TABLE_BUILDERS = {
    "aitken": lambda seq, scheme, modified: aitken_table(seq, scheme or "classic"),
    "epsilon": lambda seq, scheme, modified: epsilon_table(seq),
    "epsilon-cross": lambda seq, scheme, modified: epsilon_cross_table(seq, scheme or "plain"),
    "theta": lambda seq, scheme, modified: theta_table(seq, modified=modified),
    "theta-iterated": lambda seq, scheme, modified: iterated_theta_table(seq, scheme or "classic"),
}


def _sequence_from_input(resolved, args, field):
    if resolved.sequence is not None:
        return resolved.sequence
    series = resolved.series
    z = None
    if args.z is not None:
        z = field.parse(args.z)
    elif resolved.default_z is not None:
        z = resolved.default_z
    if z is None:
        raise _UsageError("this input is a power series: pass --z to form partial sums")
    entries = tuple(series.partial_sum(n, z) for n in range(args.terms))
    from .transforms import ScalarSequence

    return ScalarSequence(field, entries)


def cmd_accelerate(args) -> int:
    field = _field(args.mode)
    resolved = resolve_series_spec(args.series, field, count=args.terms)
    seq = _sequence_from_input(resolved, args, field)
    table = _TABLE_BUILDERS[args.family](seq, args.scheme, args.modified)
    print(f"# {resolved.label} -> family={table.family} entries={table.size}")
    print("k n value")
    for (k, n) in sorted(table.valid):
        if table.is_valid(k, n):
            print(f"{k} {n} {_render(field, table.entries[(k, n)], args.digits)}")
        else:
            print(f"{k} {n} invalid ({table.notes.get((k, n), 'breakdown')})")
    print("selected approximant per m:")
    for m in range(table.size):
        try:
            k, n, value = select_approximant(table, m)
            print(f"m={m} k={k} n={n} {_render(field, value, args.digits)}")
        except SelectionError as exc:
            print(f"m={m} unavailable ({exc})")
    if seq.limit is not None and len(seq.entries) >= 5:
        report = classify_convergence(seq)
        rho = "" if report.rho is None else f" rho~{_render(field, report.rho, 6)}"
        print(f"classification: {report.kind}{rho}")
    return 0


# ---------------------------------------------------------------------------
# predict


def cmd_predict(args) -> int:
    field = _field(args.mode)
    count_needed = args.use + 1 if args.use is not None else args.count + 16
    resolved = resolve_series_spec(args.series, field, count=count_needed)
    series = resolved.require_series()
    use = args.use if args.use is not None else series.known_order
    predictions = predict_coefficients(series, args.family, use, args.count)
    print(f"# {resolved.label} family={args.family} using coefficients 0..{use}")
    print("index prediction decimal")
    for index, value in predictions:
        if isinstance(field, RationalField):
            print(f"{index} {to_fraction_string(value)} {decimal_string(value, args.digits)}")
        else:
            print(f"{index} {scientific_string(value, args.digits)} "
                  f"{decimal_string(value, args.digits)}")
    return 0


# ---------------------------------------------------------------------------
# error-terms / transform-terms


def _cells_to_rows(cell_map, field, digits) -> list[ReportRow]:
    rows = []
    m_count = len(next(iter(cell_map.values())))
    for m in range(m_count):
        for family in sorted(cell_map):
            cell = cell_map[family][m]
            value = _render(field, cell.value, digits) if cell.valid else ""
            rows.append(ReportRow(m, family, cell.level, cell.n, value, cell.valid))
    return rows


def _emit_rows(rows, fmt: str) -> None:
    if fmt == "json":
        print(rows_to_json(rows))
    else:
        print(rows_to_csv(rows), end="")


def cmd_error_terms(args) -> int:
    field = _field(args.mode)
    resolved = resolve_series_spec(args.series, field, count=args.max_m + 1)
    series = resolved.require_series()
    z = field.parse(args.z)
    cells = evaluate_error_terms(series, z, args.max_m)
    _emit_rows(_cells_to_rows(cells, field, args.digits), args.format)
    return 0


def cmd_transform_terms(args) -> int:
    field = _field(args.mode)
    resolved = resolve_series_spec(args.series, field, count=args.max_m + 1)
    series = resolved.require_series()
    z = field.parse(args.z)
    cells = evaluate_transformation_terms(series, z, args.max_m)
    _emit_rows(_cells_to_rows(cells, field, args.digits), args.format)
    return 0


# ---------------------------------------------------------------------------
# reproduce


def _diff_report(name, rows, diffs) -> int:
    for line in rows:
        print(line)
    if diffs:
        print(f"{name}: {len(diffs)} cell(s) differ from the reference:")
        for where, got, want in diffs:
            print(f"MISMATCH {where}: computed {got}, reference {want}")
        return 2
    print(f"{name}: all cells match the reference")
    return 0


def _log_series(field, count):
    return builtin_series("log1p-over-z", (), count, field).series


def _reproduce_table(which) -> int:
    if which == "table1":
        z_text, m_max, digits, reference = (
            golden.TABLE1_Z, golden.TABLE1_M_MAX, golden.TABLE1_DIGITS, golden.TABLE1,
        )
        evaluate = evaluate_error_terms
    else:
        z_text, m_max, digits, reference = (
            golden.TABLE2_Z, golden.TABLE2_M_MAX, golden.TABLE2_DIGITS, golden.TABLE2,
        )
        evaluate = evaluate_transformation_terms
    field = field_for_mode("bigfloat", digits=max(50, _env_digits()))
    series = _log_series(field, m_max + 1)
    cells = evaluate(series, field.parse(z_text), m_max)
    rows = [f"# z = {z_text}, m = 0..{m_max}", "m " + " ".join(FAMILY_ORDER)]
    diffs = []
    for m in range(m_max + 1):
        rendered = []
        for family in FAMILY_ORDER:
            cell = cells[family][m]
            got = scientific_string(cell.value, digits) if cell.valid else "invalid"
            rendered.append(got)
            want = reference[family][m]
            if got != want:
                diffs.append((f"(m={m}, {family})", got, want))
        rows.append(f"{m} " + " ".join(rendered))
    return _diff_report(which, rows, diffs)


def _reproduce_expansion7() -> int:
    from .remainders import remainder_jets

    field = RationalField()
    series = _log_series(field, 13)
    rows = ["# exact error expansions, coefficients of z^7..z^9"]
    diffs = []
    for family in FAMILY_ORDER:
        level = golden.EXPANSION7_LEVEL[family]
        jet = remainder_jets(series, family, level, order=4, n_max=0).term(level, 0).term
        got = tuple(to_fraction_string(c) for c in jet.coeffs[:3])
        rows.append(f"{family} (level {level}): " + " ".join(got))
        for g, w, power in zip(got, golden.EXPANSION7[family], (7, 8, 9)):
            if g != w:
                diffs.append((f"({family}, z^{power})", g, w))
    return _diff_report("expansion7", rows, diffs)


def _reproduce_predict13() -> int:
    field = RationalField()
    series = _log_series(field, 13)
    rows = ["# predictions for coefficients 13..16 from coefficients 0..12"]
    diffs = []
    for family in FAMILY_ORDER:
        predictions = predict_coefficients(series, family, 12, golden.PREDICT13_COUNT)
        got = tuple(decimal_string(v, golden.PREDICT13_DIGITS) for _, v in predictions)
        rows.append(f"{family}: " + " ".join(got))
        for (index, _), g, w in zip(predictions, got, golden.PREDICT13[family]):
            if g != w:
                diffs.append((f"({family}, coefficient {index})", g, w))
    rows.append("true: " + " ".join(golden.PREDICT13_TRUE_DECIMAL))
    return _diff_report("predict13", rows, diffs)


def cmd_reproduce(args) -> int:
    if args.experiment in ("table1", "table2"):
        return _reproduce_table(args.experiment)
    if args.experiment == "expansion7":
        return _reproduce_expansion7()
    return _reproduce_predict13()


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seriaccel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_mode):
        p.add_argument("--series", required=True, help="builtin:NAME(args) | file:PATH | PATH")
        p.add_argument("--mode", default=default_mode, choices=["rational", "bigfloat", "f64"])

    p = sub.add_parser("accelerate", help="transformation table + selected approximants")
    add_common(p, "rational")
    p.add_argument("--family", required=True, choices=sorted(_TABLE_BUILDERS))
    p.add_argument("--scheme", choices=["classic", "rearranged", "plain"], default=None)
    p.add_argument("--modified", action="store_true", help="theta only: drop the odd-column carry")
    p.add_argument("--z", default=None, help="evaluation point for partial sums")
    p.add_argument("--terms", type=int, default=13)
    p.add_argument("--digits", type=int, default=10)
    p.set_defaults(func=cmd_accelerate)

    p = sub.add_parser("predict", help="predict unseen series coefficients")
    add_common(p, "rational")
    p.add_argument("--family", required=True, choices=["aitken", "epsilon", "theta", "theta-iterated"])
    p.add_argument("--use", type=int, default=None, help="last coefficient index to use")
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--digits", type=int, default=10)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("error-terms", help="numeric error-term table (needs series tail)")
    add_common(p, "bigfloat")
    p.add_argument("--z", required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--digits", type=int, default=6)
    p.set_defaults(func=cmd_error_terms)

    p = sub.add_parser("transform-terms", help="numeric transformation-term table")
    add_common(p, "bigfloat")
    p.add_argument("--z", required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--digits", type=int, default=10)
    p.set_defaults(func=cmd_transform_terms)

    p = sub.add_parser("reproduce", help="run an embedded reference experiment")
    p.add_argument("--experiment", required=True,
                   choices=["table1", "table2", "expansion7", "predict13"])
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ModeMismatchError, BreakdownError, SelectionError,
            DegeneratePadeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
