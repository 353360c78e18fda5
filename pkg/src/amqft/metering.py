"""Operation meter, closed-form cost model and published comparison counts.

Counting rules: a real addition or subtraction of stored values is one
add; a product with a trigonometric constant is one mul; a halving is one
binary translation. Copies, negations and zero fills are free.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from .signals import TransformKind, is_power_of_two, log2


@dataclass
class OpMeter:
    adds: int = 0
    muls: int = 0
    binary_translations: int = 0

    def __add__(self, other: "OpMeter") -> "OpMeter":
        return OpMeter(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def as_tuple(self) -> tuple[int, int, int]:
        return self.adds, self.muls, self.binary_translations

    @property
    def flops_case_a(self) -> int:
        return self.adds + self.muls

    @property
    def flops_case_b(self) -> int:
        return self.adds + self.muls + self.binary_translations


# Metered primitives. ``meter`` may be None; counts use the last axis only so
# batches of signals are tallied as one execution.

def _n(x) -> int:
    return np.shape(x)[-1] if np.ndim(x) else 1


def add(a, b, meter: OpMeter | None):
    if meter is not None:
        meter.adds += _n(a) if np.ndim(a) else _n(b)
    return a + b


def sub(a, b, meter: OpMeter | None):
    if meter is not None:
        meter.adds += _n(a) if np.ndim(a) else _n(b)
    return a - b


def mul(a, c, meter: OpMeter | None):
    """Multiply values ``a`` by constants ``c`` (one mul per value)."""
    if meter is not None:
        meter.muls += _n(a) if np.ndim(a) else _n(c)
    return a * c


def half(a, meter: OpMeter | None):
    if meter is not None:
        meter.binary_translations += _n(a)
    return 0.5 * a


# --- closed forms -------------------------------------------------------------

# Rows: (muls, sums, binary translations) as coefficients of
# (N*logN, N, logN, 1).
_COST_ROWS = {
    TransformKind.CDFT: ((1, -3, 0, 4), (3, -3, 0, 4), (0, 1, -4, 4)),
    TransformKind.RDFT: (("1/2", "-3/2", 0, 2), ("3/2", "-5/2", 0, 4), (0, "1/2", -2, 2)),
    TransformKind.DCT0: (("1/4", "-3/4", 0, 1), ("3/4", "-7/4", 1, 3), (0, "1/4", -1, 1)),
    TransformKind.DST0: (("1/4", "-3/4", 0, 1), ("3/4", "-7/4", -1, 3), (0, "1/4", -1, 1)),
}

_FLOP_ROWS = {
    TransformKind.CDFT: ((4, -6, 0, 8), (4, -5, -4, 12)),
    TransformKind.RDFT: ((2, -4, 0, 6), (2, "-7/2", -2, 8)),
    TransformKind.DCT0: ((1, "-5/2", 1, 4), (1, "-9/4", 0, 5)),
    TransformKind.DST0: ((1, "-5/2", -1, 4), (1, "-9/4", -2, 5)),
}

# Smallest N at which all three closed forms give the metered integers.
MIN_MODEL_N = 4


def _eval(row, N: int) -> int:
    L = log2(N)
    val = sum(Fraction(c) * t for c, t in zip(row, (N * L, N, L, 1)))
    if val.denominator != 1:
        raise ValueError(f"closed form is not integral at N={N}")
    return int(val)


def _check_model_n(N: int) -> None:
    if not is_power_of_two(N) or N < MIN_MODEL_N:
        raise ValueError(f"cost model defined for powers of two N >= {MIN_MODEL_N}, got {N}")


@dataclass(frozen=True)
class CostModel:
    transform: TransformKind

    def cost(self, N: int) -> tuple[int, int, int]:
        _check_model_n(N)
        return tuple(_eval(row, N) for row in _COST_ROWS[self.transform])

    def flops_case_a(self, N: int) -> int:
        _check_model_n(N)
        return _eval(_FLOP_ROWS[self.transform][0], N)

    def flops_case_b(self, N: int) -> int:
        _check_model_n(N)
        return _eval(_FLOP_ROWS[self.transform][1], N)


def predicted_cost(kind: TransformKind, N: int) -> tuple[int, int, int]:
    """(muls, adds, binary translations) predicted for ``kind`` at ``N``."""
    return CostModel(TransformKind(kind)).cost(N)


def predicted_flops(kind: TransformKind, N: int, case: str = "A") -> int:
    model = CostModel(TransformKind(kind))
    case = case.upper()
    if case == "A":
        return model.flops_case_a(N)
    if case == "B":
        return model.flops_case_b(N)
    raise ValueError(f"case must be 'A' or 'B', got {case!r}")


# --- metered execution ------------------------------------------------------------

def measure(variant, kind, N: int, seed: int = 0) -> OpMeter:
    """Exact operation tally of one execution on a seeded random input.

    Control flow never depends on the data, so the seed only picks the values.
    """
    from .signals import Domain, SignalBuffer
    from .variants import execute, input_type

    st = input_type(kind)
    x = np.random.default_rng(seed).uniform(-1.0, 1.0, st.length(N, Domain.TEMPORAL))
    meter = OpMeter()
    execute(variant, kind, SignalBuffer(st, N, Domain.TEMPORAL, x), meter=meter)
    return meter


# --- published comparison counts (CDFT) ----------------------------------------

LITERATURE_VERSION = "1"
LITERATURE_SIZES = (4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048)

# Values copied as published, including the SR 3/3 sum count at N=512.
_LIT_ADDS = {
    "SR_42": (16, 52, 144, 372, 912, 2164, 5008, 11380, 25488, 56436),
    "SR_33": (16, 52, 148, 388, 964, 2308, 5380, 12290, 27652, 61444),
    "JF": (16, 52, 144, 372, 912, 2164, 5008, 11380, 25488, 56436),
    "classical_QFT": (16, 52, 160, 432, 1088, 2624, 6144, 14080, 31744, 70656),
}
_LIT_MULS = {
    "SR_42": (0, 4, 24, 84, 248, 660, 1656, 3988, 9336, 21396),
    "SR_33": (0, 4, 20, 68, 196, 516, 1284, 3076, 7172, 16388),
    "JF": (0, 4, 24, 84, 240, 628, 1544, 3668, 8480, 19252),
    "classical_QFT": (0, 4, 22, 74, 210, 546, 1346, 3202, 7426, 16898),
}
# The flop table has a single split-radix column shared by both SR forms.
_SR_FLOPS = (16, 56, 168, 456, 1160, 2824, 6664, 15368, 34824, 77832)
_LIT_FLOPS = {
    "SR_42": _SR_FLOPS,
    "SR_33": _SR_FLOPS,
    "JF": (16, 56, 168, 456, 1152, 2792, 6552, 15048, 33968, 75688),
    "classical_QFT": (16, 56, 182, 506, 1298, 3170, 7490, 17282, 39170, 87554),
}
LITERATURE_ALGORITHMS = tuple(_LIT_ADDS)

_ALIASES = {"sr_42": "SR_42", "sr_4/2": "SR_42", "sr_33": "SR_33", "sr_3/3": "SR_33",
            "jf": "JF", "classical_qft": "classical_QFT", "clas_qft": "classical_QFT"}


def reference_literature_counts(algorithm: str, N: int) -> tuple[int, int, int]:
    """Published (adds, muls, flops) for a competing CDFT algorithm."""
    name = _ALIASES.get(algorithm.lower(), algorithm)
    if name not in _LIT_ADDS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if N not in LITERATURE_SIZES:
        raise ValueError(f"no published counts for N={N}")
    i = LITERATURE_SIZES.index(N)
    return _LIT_ADDS[name][i], _LIT_MULS[name][i], _LIT_FLOPS[name][i]


def literature_csv() -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["version", "algorithm", "N", "adds", "muls", "flops"])
    for name in LITERATURE_ALGORITHMS:
        for N in LITERATURE_SIZES:
            w.writerow([LITERATURE_VERSION, name, N, *reference_literature_counts(name, N)])
    return buf.getvalue()
