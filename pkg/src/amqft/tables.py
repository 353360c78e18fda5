"""Trigonometric constant tables.

One table of ``Nmax/4 - 1`` constants ``c(p)`` serves every recursion level:
at periodization ``N <= Nmax`` the constant for angle ``2*pi*p/N`` is
``c(p * Nmax / N)``. The shared base-case constant ``cos(2*pi/8)`` is kept
alongside.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .signals import is_power_of_two


class TableMode(enum.Enum):
    PRECOMPUTED = "precomputed"
    ON_THE_FLY = "on_the_fly"


# Constant family per variant (and per M elaboration of the same number).
FAMILIES = {
    1: "2cos", 3: "2cos",
    5: "2sin", 7: "2sin",
    2: "sec", 4: "sec",
    6: "csc", 8: "csc",
}


def _cos_sin(q, M: int):
    """``cos`` and ``sin`` of ``2*pi*q/M`` for ``0 < q < M/4``, octant-reduced.

    Evaluating ``cos`` near a quarter turn directly inherits the rounding of
    the angle, amplified by ``tan``; reflecting through ``M/8`` keeps every
    evaluation on an angle below ``pi/4``.
    """
    q = np.asarray(q, dtype=np.int64)
    low = 8 * q <= M
    a = 2.0 * np.pi * q / M
    b = 2.0 * np.pi * (M // 4 - q) / M
    cos = np.where(low, np.cos(a), np.sin(b))
    sin = np.where(low, np.sin(a), np.cos(b))
    return cos, sin


def family_values(family: str, q, M: int) -> np.ndarray:
    """Constants of ``family`` at angles ``2*pi*q/M``."""
    cos, sin = _cos_sin(q, M)
    if family == "2cos":
        return 2.0 * cos
    if family == "2sin":
        return 2.0 * sin
    if family == "sec":
        return 1.0 / (2.0 * cos)
    if family == "csc":
        return 1.0 / (2.0 * sin)
    raise ValueError(f"unknown constant family {family!r}")


SHARED_CONSTANT = float(np.sqrt(0.5))


@dataclass(frozen=True)
class TrigTable:
    variant: int
    Nmax: int
    mode: TableMode = TableMode.PRECOMPUTED
    constants: np.ndarray | None = field(default=None, repr=False, compare=False)
    shared: float = SHARED_CONSTANT

    @property
    def family(self) -> str:
        return FAMILIES[self.variant]

    @property
    def size(self) -> int:
        """Stored constants, the shared one included."""
        return self.Nmax // 4

    def values(self, p, N: int) -> np.ndarray:
        """Constants for angles ``2*pi*p/N`` (``p`` integer array)."""
        if N > self.Nmax or self.Nmax % N:
            raise ValueError(f"table built for Nmax={self.Nmax} cannot serve N={N}")
        q = np.asarray(p, dtype=np.int64) * (self.Nmax // N)
        if np.any(q < 1) or np.any(q > self.Nmax // 4 - 1):
            raise ValueError(f"constant index out of range for N={N}: {p}")
        if self.mode is TableMode.ON_THE_FLY:
            return family_values(self.family, q, self.Nmax)
        return self.constants[q - 1]

    def value_set(self) -> np.ndarray:
        """All stored values, shared constant last."""
        if self.constants is None:
            p = np.arange(1, self.Nmax // 4)
            body = family_values(self.family, p, self.Nmax)
        else:
            body = self.constants
        return np.append(body, self.shared)


def build_trig_table(variant: int, Nmax: int, mode=TableMode.PRECOMPUTED) -> TrigTable:
    if variant not in FAMILIES:
        raise ValueError(f"variant must be in 1..8, got {variant}")
    if not is_power_of_two(Nmax) or Nmax < 8:
        raise ValueError(f"Nmax must be a power of two >= 8, got {Nmax}")
    mode = TableMode(mode)
    constants = None
    if mode is TableMode.PRECOMPUTED:
        p = np.arange(1, Nmax // 4)
        constants = family_values(FAMILIES[variant], p, Nmax)
        constants.setflags(write=False)
    return TrigTable(variant, Nmax, mode, constants)
