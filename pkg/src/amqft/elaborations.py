"""Basic elaborations with their temporal (forward) and frequency (backward) phases.

Decompositions: Dc (CDFT -> two RDFT), Dr (RDFT -> DCT + DST), Dk (even /
odd harmonics), Dn (even / odd time indices). Transformations: Hk, Hn
(halvings, no arithmetic) and M1..M8, which turn the odd-index signals
``s_dc_oo`` / ``s_ds_oo`` into even-index ones by modulation with a
sinusoid at the fundamental.

All functions are pure: they read caller-owned buffers and return new
ones. Arithmetic goes through the metered primitives in ``metering``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .metering import OpMeter, add, half, mul, sub
from .signals import Domain, SignalBuffer, SignalType, signal_type
from .tables import FAMILIES, TableMode, TrigTable, build_trig_table

T, F = Domain.TEMPORAL, Domain.FREQUENCY


class Phase(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class ElaborationId(enum.Enum):
    Dc = "Dc"
    Dr = "Dr"
    Hk = "Hk"
    Hn = "Hn"
    Dk = "Dk"
    Dn = "Dn"
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    M4 = "M4"
    M5 = "M5"
    M6 = "M6"
    M7 = "M7"
    M8 = "M8"

    @property
    def is_decomposition(self) -> bool:
        return self in (ElaborationId.Dc, ElaborationId.Dr, ElaborationId.Dk, ElaborationId.Dn)

    @property
    def m_index(self) -> int | None:
        return int(self.value[1]) if self.value.startswith("M") else None


M_IDS = tuple(ElaborationId(f"M{v}") for v in range(1, 9))


@dataclass(frozen=True)
class ElaborationBinding:
    id: ElaborationId
    mother_type: SignalType
    child_types: tuple[SignalType, ...]
    child_n_ratio: int  # child periodization = N // child_n_ratio


def _bind(eid, mother, children, ratio=1):
    return ElaborationBinding(
        ElaborationId(eid), signal_type(mother), tuple(signal_type(c) for c in children), ratio
    )


_BINDINGS: dict[tuple[ElaborationId, str], ElaborationBinding] = {}


def _register(b: ElaborationBinding):
    _BINDINGS[(b.id, b.mother_type.name)] = b


_register(_bind("Dc", "s_cx_tt", ["s_re_tt", "s_re_tt"]))
_register(_bind("Dr", "s_re_tt", ["s_dc_tt", "s_ds_tt"]))
for _m, _c in [("s_dc_te", "s_dc_tt"), ("s_dc_oe", "s_dc_ot"),
               ("s_ds_te", "s_ds_tt"), ("s_ds_oe", "s_ds_ot")]:
    _register(_bind("Hk", _m, [_c], 2))
for _m, _c in [("s_dc_et", "s_dc_tt"), ("s_dc_eo", "s_dc_to"),
               ("s_ds_et", "s_ds_tt"), ("s_ds_eo", "s_ds_to")]:
    _register(_bind("Hn", _m, [_c], 2))
# Dk children are (even-k, odd-k); Dn children are (even-n, odd-n).
for _m, _e, _o in [("s_dc_tt", "s_dc_te", "s_dc_to"), ("s_dc_ot", "s_dc_oe", "s_dc_oo"),
                   ("s_ds_tt", "s_ds_te", "s_ds_to"), ("s_ds_ot", "s_ds_oe", "s_ds_oo")]:
    _register(_bind("Dk", _m, [_e, _o]))
for _m, _e, _o in [("s_dc_tt", "s_dc_et", "s_dc_ot"), ("s_dc_to", "s_dc_eo", "s_dc_oo"),
                   ("s_ds_tt", "s_ds_et", "s_ds_ot"), ("s_ds_to", "s_ds_eo", "s_ds_oo")]:
    _register(_bind("Dn", _m, [_e, _o]))
for _v in range(1, 9):
    _suffix = "oe" if _v in (1, 4, 5, 8) else "eo"
    _mixed = _v >= 5
    for _ctx, _other in [("dc", "ds"), ("ds", "dc")]:
        _child_ctx = _other if _mixed else _ctx
        _register(_bind(f"M{_v}", f"s_{_ctx}_oo", [f"s_{_child_ctx}_{_suffix}"]))


def binding(eid, mother) -> ElaborationBinding:
    eid, mother = ElaborationId(eid), signal_type(mother)
    try:
        return _BINDINGS[(eid, mother.name)]
    except KeyError:
        raise ValueError(f"{eid.value} is not defined for mother type {mother.name}") from None


def bindings(eid=None) -> list[ElaborationBinding]:
    eid = None if eid is None else ElaborationId(eid)
    return [b for (e, _), b in _BINDINGS.items() if eid is None or e is eid]


@lru_cache(maxsize=None)
def _child_lookup(eid: ElaborationId, child: str, slot: int) -> ElaborationBinding:
    for b in bindings(eid):
        if b.child_types[slot].name == child:
            return b
    raise ValueError(f"{eid.value} has no binding producing {child}")


def _binding_for_child(eid, child: SignalType, slot: int = 0) -> ElaborationBinding:
    return _child_lookup(ElaborationId(eid), child.name, slot)


def _expect(buf: SignalBuffer, stypes, domain: Domain, what: str):
    names = {signal_type(s).name for s in stypes}
    if buf.stype.name not in names:
        raise ValueError(f"{what}: unexpected signal type {buf.stype.name}")
    if buf.domain is not domain:
        raise ValueError(f"{what}: expected a {domain.value} buffer, got {buf.domain.value}")


@lru_cache(maxsize=4096)
def _pos(name: str, N: int, domain: Domain, indices: tuple[int, ...]) -> np.ndarray:
    rule = signal_type(name).rule(domain)
    out = np.array([(i - rule.start) // rule.step for i in indices], dtype=np.intp)
    out.setflags(write=False)
    return out


def _at(buf: SignalBuffer, indices) -> np.ndarray:
    return buf.cells[..., _pos(buf.stype.name, buf.N, buf.domain, tuple(indices))]


# --- Dc ----------------------------------------------------------------------

def dc_forward(mother: SignalBuffer, meter: OpMeter | None = None):
    """Split a complex signal into its real and imaginary parts."""
    _expect(mother, ["s_cx_tt"], T, "Dc forward")
    c = mother.cells
    return (SignalBuffer("s_re_tt", mother.N, T, c[..., 0::2].copy()),
            SignalBuffer("s_re_tt", mother.N, T, c[..., 1::2].copy()))


def dc_backward(S1: SignalBuffer, S2: SignalBuffer, meter: OpMeter | None = None) -> SignalBuffer:
    """Recombine two real spectra (halfcomplex) into the complex spectrum."""
    _expect(S1, ["s_re_tt"], F, "Dc backward")
    _expect(S2, ["s_re_tt"], F, "Dc backward")
    if S1.N != S2.N:
        raise ValueError("Dc backward: children differ in periodization")
    N, h = S1.N, S1.N // 2
    a, b = S1.cells, S2.cells
    out = np.empty(a.shape[:-1] + (2 * N,))
    out[..., 0], out[..., 1] = a[..., 0], b[..., 0]
    out[..., 2 * h], out[..., 2 * h + 1] = a[..., h], b[..., h]
    if h > 1:
        re1, im1 = a[..., 1:h], a[..., N - 1:h:-1]
        re2, im2 = b[..., 1:h], b[..., N - 1:h:-1]
        out[..., 2:2 * h:2] = sub(re1, im2, meter)
        out[..., 2 * N - 2:2 * h:-2] = add(re1, im2, meter)
        out[..., 3:2 * h:2] = add(im1, re2, meter)
        out[..., 2 * N - 1:2 * h + 1:-2] = sub(re2, im1, meter)
    return SignalBuffer("s_cx_tt", N, F, out)


# --- Dr ----------------------------------------------------------------------

def dr_forward(mother: SignalBuffer, meter: OpMeter | None = None):
    """Even part feeds the DCT child, odd part the DST child."""
    _expect(mother, ["s_re_tt"], T, "Dr forward")
    N, h = mother.N, mother.N // 2
    if N < 4:
        raise ValueError("Dr needs N >= 4")
    x = mother.cells
    mirrored = x[..., N - 1:h:-1]  # s(N - n), n = 1 .. h-1
    dct = np.empty(x.shape[:-1] + (h + 1,))
    dct[..., 0], dct[..., h] = x[..., 0], x[..., h]
    dct[..., 1:h] = add(x[..., 1:h], mirrored, meter)
    dst = sub(x[..., 1:h], mirrored, meter)
    return SignalBuffer("s_dc_tt", N, T, dct), SignalBuffer("s_ds_tt", N, T, dst)


def dr_backward(C: SignalBuffer, D: SignalBuffer, meter: OpMeter | None = None) -> SignalBuffer:
    """Re = DCT child, Im = -DST child, packed halfcomplex."""
    _expect(C, ["s_dc_tt"], F, "Dr backward")
    _expect(D, ["s_ds_tt"], F, "Dr backward")
    N, h = C.N, C.N // 2
    out = np.empty(C.cells.shape[:-1] + (N,))
    out[..., :h + 1] = C.cells
    out[..., h + 1:] = -D.cells[..., ::-1]
    return SignalBuffer("s_re_tt", N, F, out)


# --- Hk / Hn -----------------------------------------------------------------

def _halving(eid: str, phase: Phase, buf: SignalBuffer) -> SignalBuffer:
    phase = Phase(phase)
    if phase is Phase.FORWARD:
        if buf.domain is not T:
            raise ValueError(f"{eid} forward takes a temporal buffer")
        b = binding(eid, buf.stype)
        return SignalBuffer(b.child_types[0], buf.N // 2, T, buf.cells)
    if buf.domain is not F:
        raise ValueError(f"{eid} backward takes a frequency buffer")
    b = _binding_for_child(eid, buf.stype)
    return SignalBuffer(b.mother_type, buf.N * 2, F, buf.cells)


def hk_apply(phase, buffer: SignalBuffer) -> SignalBuffer:
    """Even-harmonics halving: same samples at half the periodization."""
    return _halving("Hk", phase, buffer)


def hn_apply(phase, buffer: SignalBuffer) -> SignalBuffer:
    """Even-time-indices halving: ``s'(n) = s(2n)`` at half the periodization."""
    return _halving("Hn", phase, buffer)


# --- Dk ----------------------------------------------------------------------

@lru_cache(maxsize=1024)
def _dk_layout(mother: str, N: int):
    """Per child, in (even-k, odd-k) order: folded positions and pass-through."""
    b = binding("Dk", mother)
    dc = b.mother_type.context == "dc"
    layout = []
    for slot, st in enumerate(b.child_types):
        # DCT context: sums feed even harmonics; DST context: sums feed odd ones.
        summed = (slot == 0) == dc
        ns = list(st.sto_n_rule.indices(N))
        pairs = [n for n in ns if 4 * n != N]
        passthru = None
        if len(pairs) < len(ns):
            passthru = (_pos(st.name, N, T, (N // 4,)), _pos(mother, N, T, (N // 4,)))
        layout.append((
            st, summed, len(ns), _pos(st.name, N, T, tuple(pairs)),
            _pos(mother, N, T, tuple(pairs)),
            _pos(mother, N, T, tuple(N // 2 - n for n in pairs)),
            passthru,
        ))
    return layout


def dk_forward(mother: SignalBuffer, meter: OpMeter | None = None):
    """Fold ``s(n)`` with ``s(N/2 - n)`` into (even-k child, odd-k child)."""
    if mother.domain is not T:
        raise ValueError("Dk forward takes a temporal buffer")
    x, N = mother.cells, mother.N
    out = []
    for st, summed, length, dst, src_a, src_b, passthru in _dk_layout(mother.stype.name, N):
        cells = np.empty(x.shape[:-1] + (length,))
        cells[..., dst] = (add if summed else sub)(x[..., src_a], x[..., src_b], meter)
        if passthru is not None:
            cells[..., passthru[0]] = x[..., passthru[1]]
        out.append(SignalBuffer(st, N, T, cells))
    return tuple(out)


def dk_backward(E: SignalBuffer, O: SignalBuffer, meter: OpMeter | None = None) -> SignalBuffer:
    """Interleave even- and odd-harmonic spectra; no arithmetic."""
    if E.domain is not F or O.domain is not F:
        raise ValueError("Dk backward takes frequency buffers")
    b = _binding_for_child("Dk", E.stype, 0)
    if b.child_types[1] is not O.stype or E.N != O.N:
        raise ValueError("Dk backward: children do not belong to one mother")
    N, mt = E.N, b.mother_type
    cells = np.empty(E.cells.shape[:-1] + (mt.lk_of(N),))
    for child in (E, O):
        cells[..., _pos(mt.name, N, F, tuple(child.indices()))] = child.cells
    return SignalBuffer(mt, N, F, cells)


def dk_apply(phase, *buffers, meter: OpMeter | None = None):
    if Phase(phase) is Phase.FORWARD:
        return dk_forward(*buffers, meter=meter)
    return dk_backward(*buffers, meter=meter)


# --- Dn ----------------------------------------------------------------------

def dn_forward(mother: SignalBuffer, meter: OpMeter | None = None):
    """Partition the stored samples into even-n and odd-n children."""
    if mother.domain is not T:
        raise ValueError("Dn forward takes a temporal buffer")
    b = binding("Dn", mother.stype)
    N = mother.N
    return tuple(
        SignalBuffer(st, N, T, _at(mother, list(st.sto_n_rule.indices(N))))
        for st in b.child_types
    )


def dn_backward(E: SignalBuffer, O: SignalBuffer, meter: OpMeter | None = None) -> SignalBuffer:
    """Butterflies over k and N/2 - k, plus the k = N/4 pass-through."""
    if E.domain is not F or O.domain is not F:
        raise ValueError("Dn backward takes frequency buffers")
    b = _binding_for_child("Dn", E.stype, 0)
    if b.child_types[1] is not O.stype or E.N != O.N:
        raise ValueError("Dn backward: children do not belong to one mother")
    N, mt = E.N, b.mother_type
    # (P, Q): P is the child whose spectrum enters with a + sign on both halves.
    P, Q = (E, O) if mt.context == "dc" else (O, E)
    ks = Q.indices()
    cells = np.empty(E.cells.shape[:-1] + (mt.lk_of(N),))
    p_k, q_k = _at(P, ks), Q.cells
    cells[..., _pos(mt.name, N, F, tuple(ks))] = add(p_k, q_k, meter)
    cells[..., _pos(mt.name, N, F, tuple(N // 2 - k for k in ks))] = sub(p_k, q_k, meter)
    if N // 4 in P.stype.sto_k_rule.indices(N) and N // 4 not in ks:
        cells[..., _pos(mt.name, N, F, (N // 4,))] = _at(P, [N // 4])
    return SignalBuffer(mt, N, F, cells)


def dn_apply(phase, *buffers, meter: OpMeter | None = None):
    if Phase(phase) is Phase.FORWARD:
        return dn_forward(*buffers, meter=meter)
    return dn_backward(*buffers, meter=meter)


# --- M1 .. M8 ----------------------------------------------------------------
#
# Index conventions below, with L = N/8 cells everywhere:
#   mother s(n), n = 2i+1        S(k), k = 2i+1
#   *_oe child (dc) k = 2i, (ds) k = 2i+2
#   *_eo child (dc) n = 2i, (ds) n = 2i+2

def _m_table(eid: ElaborationId, table: TrigTable | None, N: int) -> TrigTable:
    v = eid.m_index
    if table is None:
        return build_trig_table(v, N, TableMode.ON_THE_FLY)
    if FAMILIES[table.variant] != FAMILIES[v]:
        raise ValueError(f"{eid.value} needs {FAMILIES[v]} constants, table holds {table.family}")
    return table


def _odd_constants(table: TrigTable, N: int) -> np.ndarray:
    return table.values(np.arange(1, N // 4, 2), N)


def _col(x, i):
    return x[..., i:i + 1]


def m_forward(eid, mother: SignalBuffer, table: TrigTable | None = None,
              meter: OpMeter | None = None) -> SignalBuffer:
    """Temporal phase of M1..M8 on ``s_dc_oo`` / ``s_ds_oo``."""
    eid = ElaborationId(eid)
    if eid.m_index is None:
        raise ValueError(f"{eid.value} is not a modulation elaboration")
    if mother.domain is not T:
        raise ValueError(f"{eid.value} forward takes a temporal buffer")
    b = binding(eid, mother.stype)
    N = mother.N
    if N < 8:
        raise ValueError("M elaborations need N >= 8")
    child_t = b.child_types[0]
    m = mother.cells
    v = eid.m_index
    if v in (1, 4, 5, 8):
        c = mul(m, _odd_constants(_m_table(eid, table, N), N), meter)
        return SignalBuffer(child_t, N, T, c)

    L = m.shape[-1]
    c = np.empty_like(m)
    dc = mother.stype.context == "dc"
    if v == 2:
        if dc:  # c(0) = s(1); c(n) = s(n-1) + s(n+1)
            c[..., 0] = m[..., 0]
            c[..., 1:] = add(m[..., :-1], m[..., 1:], meter)
        else:  # c(n) = s(n-1) + s(n+1); c(N/4) = s(N/4-1)
            c[..., :-1] = add(m[..., :-1], m[..., 1:], meter)
            c[..., -1] = m[..., -1]
    elif v == 6:
        if dc:  # c(n) = s(n-1) - s(n+1); c(N/4) = s(N/4-1)
            c[..., :-1] = sub(m[..., :-1], m[..., 1:], meter)
            c[..., -1] = m[..., -1]
        else:  # c(0) = s(1); c(n) = s(n+1) - s(n-1)
            c[..., 0] = m[..., 0]
            c[..., 1:] = sub(m[..., 1:], m[..., :-1], meter)
    elif L == 1:
        # N = 8: the two edge relations coincide and leave c = s(1) / 2.
        c[...] = half(m, meter)
    elif v == 3 and dc:  # descending from n = N/4-2
        c[..., L - 1:] = _col(m, L - 1)
        for i in range(L - 2, 0, -1):
            c[..., i:i + 1] = sub(_col(m, i), _col(c, i + 1), meter)
        c[..., 0:1] = half(sub(_col(m, 0), _col(c, 1), meter), meter)
    elif v == 3:  # ascending from n = 2
        c[..., 0:1] = _col(m, 0)
        for i in range(1, L - 1):
            c[..., i:i + 1] = sub(_col(m, i), _col(c, i - 1), meter)
        c[..., L - 1:] = half(sub(_col(m, L - 1), _col(c, L - 2), meter), meter)
    elif v == 7 and dc:  # ascending from n = 2
        c[..., 0:1] = _col(m, 0)
        for i in range(1, L - 1):
            c[..., i:i + 1] = add(_col(m, i), _col(c, i - 1), meter)
        c[..., L - 1:] = half(add(_col(m, L - 1), _col(c, L - 2), meter), meter)
    else:  # v == 7, DST context: descending from n = N/4-2
        c[..., L - 1:] = _col(m, L - 1)
        for i in range(L - 2, 0, -1):
            c[..., i:i + 1] = add(_col(m, i), _col(c, i + 1), meter)
        c[..., 0:1] = half(add(_col(m, 0), _col(c, 1), meter), meter)
    return SignalBuffer(child_t, N, T, c)


def m_backward(eid, child: SignalBuffer, table: TrigTable | None = None,
               meter: OpMeter | None = None) -> SignalBuffer:
    """Frequency phase of M1..M8: rebuild the mother's odd-harmonic spectrum."""
    eid = ElaborationId(eid)
    if eid.m_index is None:
        raise ValueError(f"{eid.value} is not a modulation elaboration")
    if child.domain is not F:
        raise ValueError(f"{eid.value} backward takes a frequency buffer")
    b = _binding_for_child(eid, child.stype)
    N, mt = child.N, b.mother_type
    C = child.cells
    v = eid.m_index
    if v in (2, 3, 6, 7):
        S = mul(C, _odd_constants(_m_table(eid, table, N), N), meter)
        return SignalBuffer(mt, N, F, S)

    L = C.shape[-1]
    S = np.empty_like(C)
    dc = mt.context == "dc"
    if v == 4 and dc:  # S(k) = C(k-1) + C(k+1); S(N/4-1) = C(N/4-2)
        S[..., :-1] = add(C[..., :-1], C[..., 1:], meter)
        S[..., -1] = C[..., -1]
    elif v == 4:  # S(1) = C(2); S(k) = C(k-1) + C(k+1)
        S[..., 0] = C[..., 0]
        S[..., 1:] = add(C[..., :-1], C[..., 1:], meter)
    elif v == 8 and dc:  # S(1) = C(2); S(k) = C(k+1) - C(k-1)
        S[..., 0] = C[..., 0]
        S[..., 1:] = sub(C[..., 1:], C[..., :-1], meter)
    elif v == 8:  # S(k) = C(k-1) - C(k+1); S(N/4-1) = C(N/4-2)
        S[..., :-1] = sub(C[..., :-1], C[..., 1:], meter)
        S[..., -1] = C[..., -1]
    elif (v == 1 and dc) or (v == 5 and not dc):
        # S(1) = C(0)/2, then ascending: S(k+1) = C(k) -/+ S(k-1)
        op = sub if v == 1 else add
        S[..., 0:1] = half(_col(C, 0), meter)
        for i in range(1, L):
            S[..., i:i + 1] = op(_col(C, i), _col(S, i - 1), meter)
    else:
        # M1 DST / M5 DCT: S(N/4-1) = C(N/4)/2, then descending:
        # S(k-1) = C(k) -/+ S(k+1)
        op = sub if v == 1 else add
        S[..., L - 1:] = half(_col(C, L - 1), meter)
        for i in range(L - 2, -1, -1):
            S[..., i:i + 1] = op(_col(C, i), _col(S, i + 1), meter)
    return SignalBuffer(mt, N, F, S)


# --- uniform dispatch --------------------------------------------------------

_SPLITS = {
    ElaborationId.Dc: (dc_forward, dc_backward),
    ElaborationId.Dr: (dr_forward, dr_backward),
    ElaborationId.Dk: (dk_forward, dk_backward),
    ElaborationId.Dn: (dn_forward, dn_backward),
}
_HALVINGS = {ElaborationId.Hk: hk_apply, ElaborationId.Hn: hn_apply}


def forward(eid, mother: SignalBuffer, table: TrigTable | None = None,
            meter: OpMeter | None = None) -> tuple[SignalBuffer, ...]:
    """Temporal phase of any elaboration; always returns a tuple of children."""
    eid = ElaborationId(eid)
    if eid in _SPLITS:
        return _SPLITS[eid][0](mother, meter)
    if eid in _HALVINGS:
        return (_HALVINGS[eid](Phase.FORWARD, mother),)
    return (m_forward(eid, mother, table, meter),)


def backward(eid, children, table: TrigTable | None = None,
             meter: OpMeter | None = None) -> SignalBuffer:
    """Frequency phase of any elaboration from the children's spectra."""
    eid = ElaborationId(eid)
    children = tuple(children)
    if eid in _SPLITS:
        return _SPLITS[eid][1](*children, meter=meter)
    (child,) = children
    if eid in _HALVINGS:
        return _HALVINGS[eid](Phase.BACKWARD, child)
    return m_backward(eid, child, table, meter)
