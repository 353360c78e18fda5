"""Floating-point accuracy of the fast variants against the extended oracle.

Error metric: relative L2 norm per trial, ``||computed - ref|| / ||ref||``
where ``ref`` is the double-double result of the extended-precision naive
transform. The residual ``computed - ref`` is formed as
``(computed - hi) - lo`` so the reference's low part is not lost.
"""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .oracle import PrecisionMode, mp_cells, reference_cells
from .signals import Domain, SignalBuffer, TransformKind
from .tables import TableMode, build_trig_table
from .variants import VariantId, execute, input_type, min_size

CSV_HEADER = ("variant", "kind", "N", "trials", "mean_rel_err", "max_rel_err")

# Hard ordering claims are only asserted from this size on.
ORDERING_MIN_N = 256
ACCURATE = (1, 2, 3, 4)
MIXED = (5, 6, 7, 8)


@dataclass(frozen=True)
class AccuracyReport:
    variant: int
    kind: TransformKind
    N: int
    trials: int
    mean_rel_err: float
    max_rel_err: float

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("an accuracy report needs at least one trial")

    def row(self) -> tuple:
        return self.variant, self.kind.value, self.N, self.trials, self.mean_rel_err, self.max_rel_err


@dataclass(frozen=True)
class Reference:
    """Batched inputs and their extended-precision spectra."""

    inputs: SignalBuffer
    hi: np.ndarray
    lo: np.ndarray


def draw_inputs(kind, N: int, trials: int, seed: int) -> SignalBuffer:
    """``trials`` signals with i.i.d. uniform [-1, 1) stored samples."""
    kind = TransformKind(kind)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    st = input_type(kind)
    if N < min_size(kind):
        raise ValueError(f"{kind.value} needs N >= {min_size(kind)}")
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(trials, st.length(N, Domain.TEMPORAL)))
    return SignalBuffer(st, N, Domain.TEMPORAL, x)


def make_reference(kind, N: int, trials: int, seed: int) -> Reference:
    inputs = draw_inputs(kind, N, trials, seed)
    hi, lo = reference_cells(inputs, PrecisionMode.EXTENDED, dd=True)
    return Reference(inputs, hi, lo)


def relative_errors(computed: np.ndarray, ref: Reference) -> np.ndarray:
    """Per-trial relative L2 error of ``computed`` against ``ref``."""
    resid = (np.asarray(computed) - ref.hi) - ref.lo
    return np.linalg.norm(resid, axis=-1) / np.linalg.norm(ref.hi, axis=-1)


def measure_accuracy(variant, kind, N: int, trials: int = 20, seed: int = 0,
                     table_mode=TableMode.PRECOMPUTED, reference: Reference | None = None,
                     table=None) -> AccuracyReport:
    v = VariantId.parse(variant)
    kind = TransformKind(kind)
    ref = reference if reference is not None else make_reference(kind, N, trials, seed)
    if table is None:
        table = build_trig_table(v.value, max(N, 8), table_mode)
    out = execute(v, kind, ref.inputs, table)
    errs = relative_errors(out.cells, ref)
    return AccuracyReport(v.value, kind, N, len(errs), float(errs.mean()), float(errs.max()))


@dataclass(frozen=True)
class ReferenceSanity:
    """How far the reference itself can be trusted.

    ``extended_err`` is the spot-checked relative error of the reference
    actually used for ranking (against mpmath); ``working_err`` is the mean
    error of the plain float64 naive transform, kept as a diagnostic.
    """

    extended_err: float
    working_err: float


def reference_sanity(ref: Reference, samples: int = 8, seed: int = 0) -> ReferenceSanity:
    first = SignalBuffer(ref.inputs.stype, ref.inputs.N, Domain.TEMPORAL, ref.inputs.cells[0])
    rng = np.random.default_rng(seed)
    n_cells = ref.hi.shape[-1]
    pos = np.sort(rng.choice(n_cells, size=min(samples, n_cells), replace=False))
    mh, ml = mp_cells(first, pos)
    resid = (ref.hi[0, pos] - mh) + (ref.lo[0, pos] - ml)
    # Scale the sampled residual to a full-vector relative estimate.
    ext = float(np.sqrt(np.mean(resid**2) * n_cells) / np.linalg.norm(ref.hi[0]))
    working = reference_cells(ref.inputs, PrecisionMode.WORKING)
    return ReferenceSanity(ext, float(relative_errors(working, ref).mean()))


@dataclass
class OrderingResult:
    kind: TransformKind
    N: int
    trials: int
    reports: list[AccuracyReport]
    sanity: ReferenceSanity
    mixed_worse: bool | None = None  # every mixed variant worse than every accurate one
    margin_ok: bool | None = None  # ... by at least ``margin``
    v2_best: bool | None = None  # v2 mean <= v1 and v3 means
    warnings: list[str] = field(default_factory=list)

    @property
    def ranked(self) -> list[tuple[int, float]]:
        return sorted(((r.variant, r.mean_rel_err) for r in self.reports), key=lambda t: t[1])

    @property
    def reference_ok(self) -> bool:
        floor = min(r.mean_rel_err for r in self.reports)
        return self.sanity.extended_err * 10 <= floor

    @property
    def asserted(self) -> bool:
        return self.N >= ORDERING_MIN_N

    @property
    def passed(self) -> bool:
        if not self.asserted:
            return True
        return self.reference_ok and self.mixed_worse is not False and self.v2_best is not False


def ordering_check(kind=TransformKind.CDFT, N: int = 1024, trials: int = 50, seed: int = 0,
                   variants=tuple(range(1, 9)), margin: float = 10.0) -> OrderingResult:
    """Measure every requested variant on shared inputs and evaluate the claims.

    Flags whose variants are absent from ``variants`` stay ``None``.
    """
    kind = TransformKind(kind)
    ref = make_reference(kind, N, trials, seed)
    reports = [measure_accuracy(v, kind, N, reference=ref) for v in sorted(set(variants))]
    res = OrderingResult(kind, N, trials, reports, reference_sanity(ref, seed=seed))
    mean = {r.variant: r.mean_rel_err for r in reports}
    good = [mean[v] for v in ACCURATE if v in mean]
    bad = [mean[v] for v in MIXED if v in mean]
    if good and bad:
        res.mixed_worse = min(bad) > max(good)
        res.margin_ok = min(bad) >= margin * max(good)
        if res.mixed_worse and not res.margin_ok:
            res.warnings.append(
                f"N={N}: mixed-context variants are worse, but by less than {margin:g}x "
                f"({min(bad) / max(good):.3g}x)"
            )
    peers = [mean[v] for v in (1, 3) if v in mean]
    if 2 in mean and peers:
        res.v2_best = mean[2] <= min(peers)
    if res.asserted and not res.reference_ok:
        res.warnings.append(f"N={N}: reference error {res.sanity.extended_err:.3g} too large to rank")
    for w in res.warnings:
        warnings.warn(w, stacklevel=2)
    return res


def growth_check(kind=TransformKind.CDFT, sizes=(256, 1024, 4096), trials: int = 20,
                 seed: int = 0, variants=MIXED) -> dict[int, bool]:
    """Per variant: is the mean error strictly increasing along ``sizes``?"""
    kind = TransformKind(kind)
    means = {v: [] for v in variants}
    for N in sizes:
        ref = make_reference(kind, N, trials, seed)
        for v in variants:
            means[v].append(measure_accuracy(v, kind, N, reference=ref).mean_rel_err)
    return {v: all(a < b for a, b in zip(m, m[1:])) for v, m in means.items()}


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(reports, key=lambda r: (r.kind.value, r.N, r.variant)):
        row = r.row()
        w.writerow(row[:4] + tuple("%.17g" % x for x in row[4:]))
    return buf.getvalue()


__all__ = [
    "AccuracyReport", "OrderingResult", "Reference", "ReferenceSanity", "CSV_HEADER",
    "draw_inputs", "make_reference", "relative_errors", "measure_accuracy",
    "reference_sanity", "ordering_check", "growth_check", "reports_csv",
]
