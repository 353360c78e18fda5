"""Command-line front end: verify, count, tables, accuracy.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
error. Output rows are sorted and reals are printed with 17 significant
digits so repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from .accuracy import CSV_HEADER as ACCURACY_HEADER
from .accuracy import make_reference, ordering_check, relative_errors
from .metering import (
    LITERATURE_SIZES,
    MIN_MODEL_N,
    measure,
    predicted_cost,
    reference_literature_counts,
)
from .signals import TransformKind
from .tables import TableMode, TrigTable, build_trig_table
from .variants import execute, min_size

COUNT_HEADER = (
    "transform", "variant", "N", "adds", "muls", "binary_translations",
    "flops_caseA", "flops_caseB", "predicted_adds", "predicted_muls", "predicted_bt", "match",
)
TABLES = ("costo", "flops", "compare-add", "compare-mul", "compare-flop")
KIND_ORDER = {k: i for i, k in enumerate(TransformKind)}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    variants: tuple[int, ...] = tuple(range(1, 9))
    kinds: tuple[TransformKind, ...] = tuple(TransformKind)
    min_log2: int = 2
    max_log2: int = 10
    trials: int = 20
    seed: int = 0
    tolerance: float | None = None
    output: str | None = None
    format: str = "csv"
    table: str | None = None
    plot_data: str | None = None
    corrupt_table: bool = False

    def __post_init__(self):
        if not (1 <= self.min_log2 <= self.max_log2 <= 16):
            raise UsageError(
                f"size bounds must satisfy 1 <= min <= max <= 16 (log2), got "
                f"{self.min_log2}..{self.max_log2}"
            )
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError("--tolerance must be > 0")
        if not self.variants or any(v not in range(1, 9) for v in self.variants):
            raise UsageError("variants must be drawn from 1..8")
        if self.format not in ("csv", "json"):
            raise UsageError("--format is csv or json")

    @property
    def sizes(self) -> list[int]:
        return [2**e for e in range(self.min_log2, self.max_log2 + 1)]


# --- argument parsing ----------------------------------------------------------

def _parse_variants(text: str) -> tuple[int, ...]:
    out = set()
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        elif part:
            out.add(int(part))
    return tuple(sorted(out))


def _parse_kinds(text: str) -> tuple[TransformKind, ...]:
    if text.strip().lower() == "all":
        return tuple(TransformKind)
    kinds = {TransformKind.parse(p) for p in text.split(",") if p.strip()}
    return tuple(sorted(kinds, key=KIND_ORDER.get))


def _log2_of(text: str) -> int:
    n = int(text)
    if n < 1 or n & (n - 1):
        raise UsageError(f"size {n} is not a power of two")
    return n.bit_length() - 1


def _parse_sizes(text: str) -> tuple[int, int]:
    """``A..B`` or a single size, both given as powers of two."""
    if ".." in text:
        a, b = text.split("..", 1)
        return _log2_of(a), _log2_of(b)
    e = _log2_of(text)
    return e, e


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="amqft", description="Fast sinusoidal transforms: checks and tables.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, kinds="all", variants="1-8", lo=None, hi=None, trials=20):
        sp.add_argument("--variants", default=variants, help="e.g. 1-8 or 2,4")
        sp.add_argument("--kinds", default=kinds, help="cdft,rdft,dct,dst or all")
        sp.add_argument("--min-log2", type=int, default=lo)
        sp.add_argument("--max-log2", type=int, default=hi)
        sp.add_argument("--sizes", help="A..B in powers of two, e.g. 4..2048")
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tolerance", type=float)
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", default="csv", choices=("csv", "json"))

    v = sub.add_parser("verify", help="fast variants against the extended oracle")
    common(v, lo=2, hi=10)
    v.add_argument("--corrupt-table", action="store_true", help=argparse.SUPPRESS)
    c = sub.add_parser("count", help="metered operation counts against the closed forms")
    common(c, lo=2, hi=11)
    t = sub.add_parser("tables", help="reproduce a cost or comparison table")
    t.add_argument("which", choices=TABLES)
    common(t, lo=2, hi=11)
    a = sub.add_parser("accuracy", help="per-variant error and ordering checks")
    common(a, kinds="cdft", lo=8, hi=10, trials=50)
    a.add_argument("--plot-data", help="write (N, mean_rel_err) series per variant here")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    try:
        variants = _parse_variants(ns.variants)
        kinds = _parse_kinds(ns.kinds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lo, hi = ns.min_log2, ns.max_log2
    if ns.sizes:
        lo, hi = _parse_sizes(ns.sizes)
    return RunConfig(
        command=ns.command, variants=variants, kinds=kinds, min_log2=lo, max_log2=hi,
        trials=ns.trials, seed=ns.seed, tolerance=ns.tolerance, output=ns.output,
        format=ns.format, table=getattr(ns, "which", None),
        plot_data=getattr(ns, "plot_data", None),
        corrupt_table=getattr(ns, "corrupt_table", False),
    )


# --- output ----------------------------------------------------------------------

def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def render(header, rows, fmt: str) -> str:
    if fmt == "json":
        recs = [
            {h: (v if not isinstance(v, np.generic) else v.item()) for h, v in zip(header, r)}
            for r in rows
        ]
        return json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def _emit(cfg: RunConfig, header, rows, out) -> None:
    text = render(header, rows, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


# --- commands ----------------------------------------------------------------------

def _corrupted(table: TrigTable) -> TrigTable:
    bad = np.array(table.constants, copy=True)
    bad[0] *= 1.0 + 1e-3  # p = 1 is read by every top-level M step
    return TrigTable(table.variant, table.Nmax, TableMode.PRECOMPUTED, bad)


def _default_tolerance(variant: int) -> float:
    return 1e-10 if variant <= 4 else 1e-6


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    if min(cfg.sizes) < 2:
        raise UsageError("verify needs sizes >= 2")
    rows = []
    for kind in cfg.kinds:
        for N in cfg.sizes:
            if N < min_size(kind):
                continue
            ref = make_reference(kind, N, cfg.trials, cfg.seed)
            for v in cfg.variants:
                table = build_trig_table(v, max(N, 8))
                if cfg.corrupt_table and table.size > 1:
                    table = _corrupted(table)
                errs = relative_errors(execute(v, kind, ref.inputs, table).cells, ref)
                tol = cfg.tolerance if cfg.tolerance is not None else _default_tolerance(v)
                err = float(errs.max())
                rows.append((v, kind.value, N, cfg.trials, err, tol, err <= tol))
    if not rows:
        raise UsageError("no admissible (kind, N) cell in the requested grid")
    rows.sort(key=lambda r: (KIND_ORDER[TransformKind(r[1])], r[2], r[0]))
    _emit(cfg, ("variant", "kind", "N", "trials", "max_rel_err", "tolerance", "pass"), rows, out)
    return 0 if all(r[-1] for r in rows) else 1


def count_rows(variants, kinds, sizes, seed: int = 0):
    rows = []
    for kind in kinds:
        for N in sizes:
            if N < max(MIN_MODEL_N, min_size(kind)):
                continue
            p_muls, p_adds, p_bt = predicted_cost(kind, N)
            for v in variants:
                m = measure(v, kind, N, seed)
                exp_bt = p_bt if v % 2 else 0
                match = m.as_tuple() == (p_adds, p_muls, exp_bt)
                rows.append((kind.value, v, N, m.adds, m.muls, m.binary_translations,
                             m.flops_case_a, m.flops_case_b, p_adds, p_muls, exp_bt, match))
    rows.sort(key=lambda r: (KIND_ORDER[TransformKind(r[0])], r[1], r[2]))
    return rows


def cmd_count(cfg: RunConfig, out=sys.stdout) -> int:
    rows = count_rows(cfg.variants, cfg.kinds, cfg.sizes, cfg.seed)
    if not rows:
        raise UsageError(f"counts are defined for N >= {MIN_MODEL_N}")
    _emit(cfg, COUNT_HEADER, rows, out)
    return 0 if all(r[-1] for r in rows) else 1


def table_rows(which: str, sizes, seed: int = 0):
    """Header and rows of one reproduced table; metered columns use variants 1 and 4."""
    if which == "costo":
        rows = []
        for kind in TransformKind:
            for N in sizes:
                if N < max(MIN_MODEL_N, min_size(kind)):
                    continue
                m = measure(1, kind, N, seed)
                match = (m.muls, m.adds, m.binary_translations) == predicted_cost(kind, N)
                rows.append((kind.value, N, m.muls, m.adds, m.binary_translations, match))
        return ("transform", "N", "muls", "adds", "binary_translations", "match"), rows
    if which == "flops":
        rows = []
        for kind in TransformKind:
            for N in sizes:
                if N < max(MIN_MODEL_N, min_size(kind)):
                    continue
                m = measure(1, kind, N, seed)
                rows.append((kind.value, N, m.flops_case_a, m.flops_case_b))
        return ("transform", "N", "flops_caseA", "flops_caseB"), rows
    lit = ("SR_42", "SR_33", "JF", "classical_QFT")
    cols = ("SR_4/2", "SR_3/3", "JF", "clas_QFT")
    rows = []
    for N in sizes:
        if N not in LITERATURE_SIZES:
            continue
        refs = [reference_literature_counts(a, N) for a in lit]
        if which == "compare-add":
            rows.append((N, measure(4, "cdft", N, seed).adds, *(r[0] for r in refs)))
        elif which == "compare-mul":
            rows.append((N, measure(4, "cdft", N, seed).muls, *(r[1] for r in refs)))
        else:
            m1 = measure(1, "cdft", N, seed)
            # The split-radix forms share one published flop column.
            rows.append((N, m1.flops_case_a, m1.flops_case_b, refs[0][2], refs[2][2], refs[3][2]))
    if which == "compare-flop":
        return ("N", "var_QFT_A", "var_QFT_B", "SR", "JF", "clas_QFT"), rows
    return ("N", "var_QFT", *cols), rows


def cmd_tables(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.table not in TABLES:
        raise UsageError(f"unknown table {cfg.table!r}")
    header, rows = table_rows(cfg.table, cfg.sizes, cfg.seed)
    if not rows:
        raise UsageError("no table rows in the requested size range")
    _emit(cfg, header, rows, out)
    return 0


def plot_data_text(reports) -> str:
    lines = []
    for v in sorted({r.variant for r in reports}):
        for kind in sorted({r.kind for r in reports}, key=KIND_ORDER.get):
            series = sorted((r.N, r.mean_rel_err) for r in reports if r.variant == v and r.kind is kind)
            if not series:
                continue
            lines.append(f"# variant {v} {kind.value}")
            lines.extend(f"{N} {err:.17g}" for N, err in series)
            lines.append("")
    return "\n".join(lines) + "\n"


def cmd_accuracy(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    reports, ok = [], True
    for kind in cfg.kinds:
        for N in cfg.sizes:
            if N < min_size(kind):
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                res = ordering_check(kind, N, cfg.trials, cfg.seed, cfg.variants)
            reports.extend(res.reports)
            for w in res.warnings:
                err.write(f"warning: {w}\n")
            if res.asserted:
                if not res.reference_ok:
                    err.write(f"{kind.value} N={N}: reference not accurate enough; refusing to rank\n")
                if res.mixed_worse is False:
                    err.write(f"{kind.value} N={N}: FAIL mixed-context variants not all worse\n")
                if res.v2_best is False:
                    err.write(f"{kind.value} N={N}: FAIL variant 2 less accurate than variant 1 or 3\n")
                ok = ok and res.passed
    if not reports:
        raise UsageError("no admissible (kind, N) cell in the requested grid")
    reports.sort(key=lambda r: (KIND_ORDER[r.kind], r.N, r.variant))
    _emit(cfg, ACCURACY_HEADER, [r.row() for r in reports], out)
    if cfg.plot_data:
        with open(cfg.plot_data, "w", encoding="utf-8") as fh:
            fh.write(plot_data_text(reports))
    return 0 if ok else 1


COMMANDS = {"verify": cmd_verify, "count": cmd_count, "tables": cmd_tables, "accuracy": cmd_accuracy}


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else list(argv))
        if cfg.command == "accuracy":
            return cmd_accuracy(cfg, out, err)
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
