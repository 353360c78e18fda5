"""Variant plans and the recursive executor.

A plan maps each recursive function to a fixed recipe: a chain of
one-child transformations, one decomposition, and for each of the two
children a (possibly empty) run of halvings followed by a recursive call.
Execution interprets the recipe, so introspecting a plan tells exactly what
will run.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import elaborations as el
from .elaborations import ElaborationId as E
from .metering import OpMeter, mul
from .signals import Domain, SignalBuffer, SignalType, TransformKind, signal_type
from .tables import TableMode, TrigTable, build_trig_table

__all__ = [
    "VariantId", "FunctionId", "Call", "FunctionWiring", "VariantPlan",
    "build_plan", "execute", "base_case", "input_type", "min_size",
    "TrigTable", "TableMode", "build_trig_table",
]


class VariantId(int, enum.Enum):
    V1 = 1
    V2 = 2
    V3 = 3
    V4 = 4
    V5 = 5
    V6 = 6
    V7 = 7
    V8 = 8

    @property
    def time_first(self) -> bool:
        return self.value in (1, 4, 5, 8)

    @property
    def mixes_contexts(self) -> bool:
        return self.value >= 5

    @property
    def uses_halving(self) -> bool:
        """Odd variants spend binary translations in their M elaboration."""
        return self.value % 2 == 1

    @classmethod
    def parse(cls, v) -> "VariantId":
        try:
            return cls(int(v))
        except (ValueError, TypeError):
            raise ValueError(f"variant must be an integer in 1..8, got {v!r}") from None


class FunctionId(enum.Enum):
    CDFT = "cdft"
    RDFT = "rdft"
    DCT = "dct"
    DST = "dst"
    DCT_OT = "dct_ot"
    DST_OT = "dst_ot"
    DCT_TO = "dct_to"
    DST_TO = "dst_to"
    DCT_OO = "dct_oo"
    DST_OO = "dst_oo"

    @property
    def signal(self) -> SignalType:
        return signal_type(_FN_TYPES[self])

    @property
    def base_n(self) -> int:
        return _BASE_N[self]


_FN_TYPES = {
    FunctionId.CDFT: "s_cx_tt", FunctionId.RDFT: "s_re_tt",
    FunctionId.DCT: "s_dc_tt", FunctionId.DST: "s_ds_tt",
    FunctionId.DCT_OT: "s_dc_ot", FunctionId.DST_OT: "s_ds_ot",
    FunctionId.DCT_TO: "s_dc_to", FunctionId.DST_TO: "s_ds_to",
    FunctionId.DCT_OO: "s_dc_oo", FunctionId.DST_OO: "s_ds_oo",
}
_BASE_N = {
    FunctionId.CDFT: 2, FunctionId.RDFT: 2, FunctionId.DCT: 2,
    FunctionId.DST: 4, FunctionId.DCT_OT: 4, FunctionId.DST_OT: 4,
    FunctionId.DCT_TO: 4, FunctionId.DST_TO: 4,
    FunctionId.DCT_OO: 8, FunctionId.DST_OO: 8,
}
_KIND_FN = {
    TransformKind.CDFT: FunctionId.CDFT, TransformKind.RDFT: FunctionId.RDFT,
    TransformKind.DCT0: FunctionId.DCT, TransformKind.DST0: FunctionId.DST,
}


def input_type(kind) -> SignalType:
    return _KIND_FN[TransformKind(kind)].signal


def min_size(kind) -> int:
    return _KIND_FN[TransformKind(kind)].base_n


@dataclass(frozen=True)
class Call:
    """Recursive call on one child: halvings ``via`` then ``function`` at ``N // divisor``."""

    function: FunctionId
    divisor: int
    via: tuple[E, ...] = ()


@dataclass(frozen=True)
class FunctionWiring:
    function: FunctionId
    chain: tuple[E, ...]  # one-child transformations applied before the split
    split: E
    calls: tuple[Call, Call]

    @property
    def elaborations(self) -> tuple[E, ...]:
        return self.chain + (self.split,)


@dataclass(frozen=True)
class VariantPlan:
    variant: VariantId
    wiring: Mapping[FunctionId, FunctionWiring]
    base_cases: Mapping[FunctionId, int]
    m_elab: E

    @property
    def functions(self) -> frozenset[FunctionId]:
        return frozenset(self.wiring)

    def reachable(self, root: FunctionId) -> frozenset[FunctionId]:
        seen, todo = set(), [root]
        while todo:
            fn = todo.pop()
            if fn in seen:
                continue
            seen.add(fn)
            todo.extend(c.function for c in self.wiring[fn].calls)
        return frozenset(seen)


def _ctx_fns(ctx: str):
    if ctx == "dc":
        return FunctionId.DCT, FunctionId.DCT_OT, FunctionId.DCT_TO, FunctionId.DCT_OO
    return FunctionId.DST, FunctionId.DST_OT, FunctionId.DST_TO, FunctionId.DST_OO


def build_plan(variant) -> VariantPlan:
    v = VariantId.parse(variant)
    m = E(f"M{v.value}")
    W = FunctionWiring
    wiring = {
        FunctionId.CDFT: W(FunctionId.CDFT, (), E.Dc,
                           (Call(FunctionId.RDFT, 1), Call(FunctionId.RDFT, 1))),
        FunctionId.RDFT: W(FunctionId.RDFT, (), E.Dr,
                           (Call(FunctionId.DCT, 1), Call(FunctionId.DST, 1))),
    }
    for ctx, other in (("dc", "ds"), ("ds", "dc")):
        full, ot, to, oo = _ctx_fns(ctx)
        _, m_ot, m_to, m_oo = _ctx_fns(other if v.mixes_contexts else ctx)
        if v.time_first:
            wiring[full] = W(full, (), E.Dn, (Call(full, 2, (E.Hn,)), Call(ot, 1)))
            wiring[ot] = W(ot, (), E.Dk, (Call(ot, 2, (E.Hk,)), Call(oo, 1)))
            wiring[oo] = W(oo, (m, E.Hk), E.Dk, (Call(m_ot, 4, (E.Hk,)), Call(m_oo, 2)))
        else:
            wiring[full] = W(full, (), E.Dk, (Call(full, 2, (E.Hk,)), Call(to, 1)))
            wiring[to] = W(to, (), E.Dn, (Call(to, 2, (E.Hn,)), Call(oo, 1)))
            wiring[oo] = W(oo, (m, E.Hn), E.Dn, (Call(m_to, 4, (E.Hn,)), Call(m_oo, 2)))
    plan = VariantPlan(
        v,
        MappingProxyType(wiring),
        MappingProxyType({fn: fn.base_n for fn in wiring}),
        m,
    )
    _typecheck(plan)
    return plan


def _typecheck(plan: VariantPlan) -> None:
    """Walk every recipe through the binding table; raises on any mismatch."""
    for fn, w in plan.wiring.items():
        st, ratio = fn.signal, 1
        for eid in w.chain:
            b = el.binding(eid, st)
            st, ratio = b.child_types[0], ratio * b.child_n_ratio
        b = el.binding(w.split, st)
        for child, call in zip(b.child_types, w.calls):
            r = ratio
            for eid in call.via:
                hb = el.binding(eid, child)
                child, r = hb.child_types[0], r * hb.child_n_ratio
            if child is not call.function.signal or r != call.divisor:
                raise AssertionError(f"variant {plan.variant.value}: {fn.value} miswired")


# --- execution ----------------------------------------------------------------

def base_case(fn, buffer: SignalBuffer, table: TrigTable | None = None,
              meter: OpMeter | None = None) -> SignalBuffer:
    """Direct evaluation at the function's smallest periodization."""
    fn = FunctionId(fn)
    if buffer.stype is not fn.signal:
        raise ValueError(f"{fn.value} takes {fn.signal.name}, got {buffer.stype.name}")
    if buffer.domain is not Domain.TEMPORAL:
        raise ValueError("base_case takes a temporal buffer")
    if buffer.N != fn.base_n:
        raise ValueError(f"{fn.value} base case is N={fn.base_n}, got N={buffer.N}")
    x = buffer.cells
    if fn in (FunctionId.RDFT, FunctionId.DCT):
        a, b = x[..., 0:1], x[..., 1:2]
        out = np.concatenate([el.add(a, b, meter), el.sub(a, b, meter)], axis=-1)
    elif fn is FunctionId.CDFT:
        a, b = x[..., 0:2], x[..., 2:4]
        out = np.concatenate([el.add(a, b, meter), el.sub(a, b, meter)], axis=-1)
    elif fn in (FunctionId.DCT_OO, FunctionId.DST_OO):
        shared = table.shared if table is not None else build_trig_table(1, 8).shared
        out = mul(x, shared, meter)
    else:
        # Single stored sample against a unit trig value.
        out = x.copy()
    return SignalBuffer(fn.signal, buffer.N, Domain.FREQUENCY, out)


def _run(plan: VariantPlan, fn: FunctionId, buf: SignalBuffer, table, meter) -> SignalBuffer:
    if buf.N == fn.base_n:
        return base_case(fn, buf, table, meter)
    w = plan.wiring[fn]
    for eid in w.chain:
        (buf,) = el.forward(eid, buf, table, meter)
    children = el.forward(w.split, buf, table, meter)
    spectra = []
    for child, call in zip(children, w.calls):
        for eid in call.via:
            (child,) = el.forward(eid, child)
        res = _run(plan, call.function, child, table, meter)
        for eid in reversed(call.via):
            res = el.backward(eid, (res,))
        spectra.append(res)
    out = el.backward(w.split, spectra, table, meter)
    for eid in reversed(w.chain):
        out = el.backward(eid, (out,), table, meter)
    return out


_PLANS = {v: build_plan(v) for v in VariantId}


def execute(variant, kind, buffer: SignalBuffer, table: TrigTable | None = None,
            meter: OpMeter | None = None) -> SignalBuffer:
    """Fast transform of ``buffer`` (temporal, any leading batch axes)."""
    plan = variant if isinstance(variant, VariantPlan) else _PLANS[VariantId.parse(variant)]
    fn = _KIND_FN[TransformKind(kind)]
    if buffer.stype is not fn.signal:
        raise ValueError(f"{fn.value} input must be {fn.signal.name}, got {buffer.stype.name}")
    if buffer.domain is not Domain.TEMPORAL:
        raise ValueError("execute takes a temporal buffer")
    if buffer.N < fn.base_n:
        raise ValueError(f"{fn.value} needs N >= {fn.base_n}")
    if table is None:
        table = build_trig_table(plan.variant.value, max(buffer.N, 8))
    elif table.family != build_trig_table(plan.variant.value, 8).family:
        raise ValueError(f"table of variant {table.variant} does not fit variant {plan.variant.value}")
    elif buffer.N > table.Nmax:
        raise ValueError(f"N={buffer.N} exceeds table capacity Nmax={table.Nmax}")
    return _run(plan, fn, buffer, table, meter)
