"""Signal types, stored index sets and packed storage layout.

A signal type fixes the transform applied to a signal together with the
temporal indices (``sto_n``) and harmonics (``sto_k``) that are actually
kept in memory. Every index set is an arithmetic progression whose bounds
depend on the periodization ``N``; values outside it are either a-priori
zero or redundant and are never stored.

Buffers are zero-based. Index ``i`` of a progression ``start, start+step,
...`` lives at position ``(i - start) // step``. Complex signals store
``(re, im)`` interleaved; the real DFT stores its spectrum in halfcomplex
order (``Re S(k)`` at ``k`` for ``k <= N/2``, ``Im S(k)`` at ``N - k``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Callable

import numpy as np


class TransformKind(enum.Enum):
    CDFT = "cdft"
    RDFT = "rdft"
    DCT0 = "dct"
    DST0 = "dst"

    @classmethod
    def parse(cls, name: str) -> "TransformKind":
        key = name.strip().lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown transform kind {name!r}")


class Domain(enum.Enum):
    TEMPORAL = "temporal"
    FREQUENCY = "frequency"


def is_power_of_two(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


def log2(n: int) -> int:
    if not is_power_of_two(n):
        raise ValueError(f"N={n} is not a power of two")
    return int(n).bit_length() - 1


@dataclass(frozen=True)
class TransformSpec:
    """Periodization ``N`` and the fundamental angle ``2*pi/N``."""

    N: int

    def __post_init__(self):
        if not is_power_of_two(self.N) or self.N < 2:
            raise ValueError(f"periodization must be a power of two >= 2, got {self.N}")

    @property
    def theta(self) -> float:
        return 2.0 * np.pi / self.N


# Progression bounds are written as N * Fraction + offset so that
# well-definedness (integer endpoints) can be checked exactly.
_Bound = tuple[Fraction, int]


def _b(frac: str | int, offset: int = 0) -> _Bound:
    return (Fraction(frac), offset)


@dataclass(frozen=True)
class Progression:
    start: int
    step: int
    end: _Bound

    def end_at(self, N: int) -> Fraction:
        frac, off = self.end
        return frac * N + off

    def defined_at(self, N: int) -> bool:
        end = self.end_at(N)
        return (
            end.denominator == 1
            and end >= self.start
            and (int(end) - self.start) % self.step == 0
        )

    def indices(self, N: int) -> range:
        return range(self.start, int(self.end_at(N)) + 1, self.step)


@dataclass(frozen=True)
class SignalType:
    name: str
    transform: TransformKind
    sto_n_rule: Progression
    sto_k_rule: Progression
    ln_of: Callable[[int], int]
    lk_of: Callable[[int], int]

    @property
    def context(self) -> str:
        """``"dc"``, ``"ds"``, ``"re"`` or ``"cx"``."""
        return self.name.split("_")[1]

    @cached_property
    def min_n(self) -> int:
        N = 2
        while not (self.sto_n_rule.defined_at(N) and self.sto_k_rule.defined_at(N)):
            N *= 2
        return N

    def check_size(self, N: int) -> None:
        if not is_power_of_two(N):
            raise ValueError(f"N={N} is not a power of two")
        if N < self.min_n:
            raise ValueError(f"{self.name} needs N >= {self.min_n}, got N={N}")

    def rule(self, domain: Domain) -> Progression:
        return self.sto_n_rule if domain is Domain.TEMPORAL else self.sto_k_rule

    def length(self, N: int, domain: Domain) -> int:
        """Number of real storage cells (``ln`` or ``lk``)."""
        return self.ln_of(N) if domain is Domain.TEMPORAL else self.lk_of(N)

    def __repr__(self):
        return f"SignalType({self.name})"


def _p(start: int, step: int, frac, off: int = 0) -> Progression:
    return Progression(start, step, _b(frac, off))


_TT = TransformKind
SIGNAL_TYPES: dict[str, SignalType] = {
    t.name: t
    for t in [
        SignalType("s_cx_tt", _TT.CDFT, _p(0, 1, 1, -1), _p(0, 1, 1, -1),
                   lambda N: 2 * N, lambda N: 2 * N),
        SignalType("s_re_tt", _TT.RDFT, _p(0, 1, 1, -1), _p(0, 1, 1, -1),
                   lambda N: N, lambda N: N),
        SignalType("s_dc_tt", _TT.DCT0, _p(0, 1, "1/2"), _p(0, 1, "1/2"),
                   lambda N: N // 2 + 1, lambda N: N // 2 + 1),
        SignalType("s_dc_et", _TT.DCT0, _p(0, 2, "1/2"), _p(0, 1, "1/4"),
                   lambda N: N // 4 + 1, lambda N: N // 4 + 1),
        SignalType("s_dc_ot", _TT.DCT0, _p(1, 2, "1/2", -1), _p(0, 1, "1/4", -1),
                   lambda N: N // 4, lambda N: N // 4),
        SignalType("s_dc_te", _TT.DCT0, _p(0, 1, "1/4"), _p(0, 2, "1/2"),
                   lambda N: N // 4 + 1, lambda N: N // 4 + 1),
        SignalType("s_dc_to", _TT.DCT0, _p(0, 1, "1/4", -1), _p(1, 2, "1/2", -1),
                   lambda N: N // 4, lambda N: N // 4),
        SignalType("s_dc_oe", _TT.DCT0, _p(1, 2, "1/4", -1), _p(0, 2, "1/4", -2),
                   lambda N: N // 8, lambda N: N // 8),
        SignalType("s_dc_eo", _TT.DCT0, _p(0, 2, "1/4", -2), _p(1, 2, "1/4", -1),
                   lambda N: N // 8, lambda N: N // 8),
        SignalType("s_dc_oo", _TT.DCT0, _p(1, 2, "1/4", -1), _p(1, 2, "1/4", -1),
                   lambda N: N // 8, lambda N: N // 8),
        SignalType("s_ds_tt", _TT.DST0, _p(1, 1, "1/2", -1), _p(1, 1, "1/2", -1),
                   lambda N: N // 2 - 1, lambda N: N // 2 - 1),
        SignalType("s_ds_et", _TT.DST0, _p(2, 2, "1/2", -2), _p(1, 1, "1/4", -1),
                   lambda N: N // 4 - 1, lambda N: N // 4 - 1),
        # Harmonics end at N/2 - 2: the even set {2, 4, ..., N/2 - 2}.
        SignalType("s_ds_te", _TT.DST0, _p(1, 1, "1/4", -1), _p(2, 2, "1/2", -2),
                   lambda N: N // 4 - 1, lambda N: N // 4 - 1),
        SignalType("s_ds_to", _TT.DST0, _p(1, 1, "1/4"), _p(1, 2, "1/2", -1),
                   lambda N: N // 4, lambda N: N // 4),
        SignalType("s_ds_ot", _TT.DST0, _p(1, 2, "1/2", -1), _p(1, 1, "1/4"),
                   lambda N: N // 4, lambda N: N // 4),
        SignalType("s_ds_oe", _TT.DST0, _p(1, 2, "1/4", -1), _p(2, 2, "1/4"),
                   lambda N: N // 8, lambda N: N // 8),
        SignalType("s_ds_eo", _TT.DST0, _p(2, 2, "1/4"), _p(1, 2, "1/4", -1),
                   lambda N: N // 8, lambda N: N // 8),
        SignalType("s_ds_oo", _TT.DST0, _p(1, 2, "1/4", -1), _p(1, 2, "1/4", -1),
                   lambda N: N // 8, lambda N: N // 8),
    ]
}


def signal_type(name: str | SignalType) -> SignalType:
    if isinstance(name, SignalType):
        return name
    try:
        return SIGNAL_TYPES[name]
    except KeyError:
        raise ValueError(f"unknown signal type {name!r}") from None


def _spec(spec: TransformSpec | int) -> TransformSpec:
    return spec if isinstance(spec, TransformSpec) else TransformSpec(int(spec))


def sto_indices(stype, spec, domain: Domain) -> list[int]:
    """Stored temporal indices or harmonics of ``stype`` at periodization N."""
    stype, spec = signal_type(stype), _spec(spec)
    stype.check_size(spec.N)
    return list(stype.rule(domain).indices(spec.N))


def storage_position(stype, spec, domain: Domain, index: int) -> int:
    """Zero-based cell holding logical index ``index``.

    For ``s_cx_tt`` the returned cell holds the real part and the imaginary
    part follows it.
    """
    stype, spec = signal_type(stype), _spec(spec)
    stype.check_size(spec.N)
    rule = stype.rule(domain)
    if index not in rule.indices(spec.N):
        raise ValueError(f"index {index} is not stored by {stype.name} at N={spec.N}")
    pos = (index - rule.start) // rule.step
    return 2 * pos if stype.transform is TransformKind.CDFT else pos


@dataclass
class SignalBuffer:
    """Packed cells of one signal (or a batch of signals along leading axes)."""

    stype: SignalType
    N: int
    domain: Domain
    cells: np.ndarray

    def __post_init__(self):
        self.stype = signal_type(self.stype)
        self.stype.check_size(self.N)
        self.cells = np.asarray(self.cells, dtype=float)
        expected = self.stype.length(self.N, self.domain)
        if self.cells.ndim == 0 or self.cells.shape[-1] != expected:
            raise ValueError(
                f"{self.stype.name} at N={self.N} ({self.domain.value}) needs "
                f"{expected} cells, got shape {self.cells.shape}"
            )

    @property
    def spec(self) -> TransformSpec:
        return TransformSpec(self.N)

    def indices(self) -> list[int]:
        return list(self.stype.rule(self.domain).indices(self.N))

    def to_dict(self) -> dict[int, float | complex]:
        """Logical index -> value (single signals only)."""
        if self.cells.ndim != 1:
            raise ValueError("to_dict needs an unbatched buffer")
        if self.stype.transform is TransformKind.CDFT:
            z = self.cells[0::2] + 1j * self.cells[1::2]
            return dict(zip(self.indices(), z))
        return dict(zip(self.indices(), self.cells))

    @classmethod
    def from_values(cls, stype, N: int, domain: Domain, values) -> "SignalBuffer":
        """Pack a full-length logical sequence (index -> value) into cells.

        ``values`` is indexable by logical index; unstored entries are ignored.
        """
        stype = signal_type(stype)
        idx = list(stype.rule(domain).indices(N))
        vals = np.asarray(values)[..., idx]
        if stype.transform is TransformKind.CDFT:
            vals = np.asarray(vals, dtype=complex)
            cells = np.empty(vals.shape[:-1] + (2 * len(idx),))
            cells[..., 0::2] = vals.real
            cells[..., 1::2] = vals.imag
            return cls(stype, N, domain, cells)
        return cls(stype, N, domain, np.asarray(vals, dtype=float))


def halfcomplex_to_complex(cells: np.ndarray) -> np.ndarray:
    """Expand a halfcomplex real-DFT spectrum to the full complex spectrum."""
    cells = np.asarray(cells, dtype=float)
    N = cells.shape[-1]
    h = N // 2
    out = np.zeros(cells.shape, dtype=complex)
    out[..., : h + 1] = cells[..., : h + 1]
    if N > 2:
        im = cells[..., :h:-1]  # Im S(k) for k = 1 .. h-1
        out[..., 1:h] += 1j * im
        out[..., h + 1:] = np.conj(out[..., 1:h][..., ::-1])
    return out


def complex_to_halfcomplex(spectrum: np.ndarray) -> np.ndarray:
    spectrum = np.asarray(spectrum, dtype=complex)
    N = spectrum.shape[-1]
    h = N // 2
    cells = np.empty(spectrum.shape, dtype=float)
    cells[..., : h + 1] = spectrum[..., : h + 1].real
    if N > 2:
        cells[..., h + 1:] = spectrum[..., h - 1:0:-1].imag
    return cells
