"""Direct O(N^2) evaluation of CDFT, RDFT, DCT-0 and DST-0.

Two precisions are offered. ``WORKING`` is a plain float64 dot product.
``EXTENDED`` carries roughly 80 significant bits: the data and the
trigonometric values (taken from mpmath) are cut into slices of ``beta``
bits, every slice-by-slice matrix product is then exact in float64, and the
exact partial products are summed in double-double arithmetic.

Trigonometric values are always derived from the angle ``2*pi*r/N`` with
``r = n*k mod N``; nothing here shares constants with the fast transforms.
"""
from __future__ import annotations

import enum
import math
from functools import lru_cache

import mpmath
import numpy as np

from .signals import (
    Domain,
    SignalBuffer,
    TransformKind,
    TransformSpec,
    complex_to_halfcomplex,
    signal_type,
)


class PrecisionMode(enum.Enum):
    WORKING = "working"
    EXTENDED = "extended"


# Elements per gathered trig block; bounds peak memory at large N.
_BLOCK = 1 << 21
_EXTENDED_BITS = 84


def _trig(fn: str, N: int) -> np.ndarray:
    r = np.arange(N)
    ang = 2.0 * np.pi * r / N
    return np.cos(ang) if fn == "cos" else np.sin(ang)


@lru_cache(maxsize=64)
def _trig_slices(fn: str, N: int, beta: int, count: int) -> np.ndarray:
    """``count`` slices of ``beta`` bits each summing to trig(2*pi*r/N)."""
    f = mpmath.cos if fn == "cos" else mpmath.sin
    out = np.zeros((count, N))
    with mpmath.workdps(50):
        two_pi = 2 * mpmath.pi
        for r in range(N):
            rem = f(two_pi * r / N)
            for j in range(count):
                scale = mpmath.ldexp(1, beta * (j + 1))
                q = mpmath.nint(rem * scale)
                out[j, r] = math.ldexp(int(q), -beta * (j + 1))
                rem -= q / scale
    out.setflags(write=False)
    return out


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


class _DDSum:
    def __init__(self):
        self.hi = None
        self.lo = None

    def add(self, term: np.ndarray, sign: float = 1.0) -> None:
        term = sign * term
        if self.hi is None:
            self.hi = term.copy()
            self.lo = np.zeros_like(term)
            return
        self.hi, err = _two_sum(self.hi, term)
        self.lo += err

    def result(self):
        hi = self.hi + self.lo
        lo = self.lo - (hi - self.hi)
        return hi, lo


def _index_blocks(n_idx: np.ndarray, k_idx: np.ndarray, N: int):
    step = max(1, _BLOCK // max(1, len(n_idx)))
    for start in range(0, len(k_idx), step):
        sl = slice(start, start + step)
        yield sl, np.mod(np.outer(n_idx, k_idx[sl]), N)


def _working_sum(x, n_idx, k_idx, N, fn):
    table = _trig(fn, N)
    out = np.empty(x.shape[:-1] + (len(k_idx),))
    for sl, idx in _index_blocks(n_idx, k_idx, N):
        out[..., sl] = x @ table[idx]
    return out


def _slice_rows(x: np.ndarray, beta: int, count: int):
    """Split each row of ``x`` into ``count`` slices aligned to the row max."""
    amax = np.max(np.abs(x), axis=-1, keepdims=True)
    _, e = np.frexp(amax)
    e = e.astype(np.int64)
    rem = x.copy()
    slices = []
    for i in range(1, count + 1):
        shift = e - beta * i
        s = np.ldexp(np.rint(np.ldexp(rem, -shift)), shift)
        slices.append(s)
        rem = rem - s
    return slices


def _extended_terms(x, n_idx, k_idx, N, fn):
    """Yield exact float64 partial products whose sum is the trig sum."""
    terms = max(1, len(n_idx))
    beta = (53 - math.ceil(math.log2(terms))) // 2 if terms > 1 else 26
    count = math.ceil(_EXTENDED_BITS / beta)
    xs = _slice_rows(x, beta, count)
    ts = _trig_slices(fn, N, beta, count)
    for sl, idx in _index_blocks(n_idx, k_idx, N):
        for j in range(count):
            tj = ts[j][idx]
            for i in range(count - j):
                yield sl, xs[i] @ tj


def _trig_sum(parts, k_idx, N, mode):
    """Evaluate sum over ``parts`` of sign * sum_n x(n) trig(theta*n*k).

    ``parts`` is a list of ``(x, n_idx, fn, sign)`` with ``x`` of shape
    ``(B, len(n_idx))``. Returns an array (WORKING) or a ``(hi, lo)`` pair.
    """
    k_idx = np.asarray(k_idx, dtype=np.int64)
    B = parts[0][0].shape[0]
    if mode is PrecisionMode.WORKING:
        out = np.zeros((B, len(k_idx)))
        for x, n_idx, fn, sign in parts:
            out += sign * _working_sum(x, np.asarray(n_idx, dtype=np.int64), k_idx, N, fn)
        return out
    hi = np.zeros((B, len(k_idx)))
    lo = np.zeros((B, len(k_idx)))
    acc = {}
    for x, n_idx, fn, sign in parts:
        for sl, term in _extended_terms(x, np.asarray(n_idx, dtype=np.int64), k_idx, N, fn):
            key = (sl.start, sl.stop)
            acc.setdefault(key, (sl, _DDSum()))[1].add(term, sign)
    for sl, dd in acc.values():
        hi[:, sl], lo[:, sl] = dd.result()
    return hi, lo


def _as_batch(x):
    x = np.asarray(x)
    lead = x.shape[:-1]
    return x.reshape((-1, x.shape[-1])), lead


def _finish(result, lead, mode, dd: bool):
    if mode is PrecisionMode.WORKING:
        return result.reshape(lead + result.shape[-1:])
    hi, lo = result
    hi = hi.reshape(lead + hi.shape[-1:])
    lo = lo.reshape(lead + lo.shape[-1:])
    return (hi, lo) if dd else hi


def _check_mode(mode) -> PrecisionMode:
    return mode if isinstance(mode, PrecisionMode) else PrecisionMode(mode)


def _N(spec, default: int) -> int:
    if spec is None:
        return TransformSpec(default).N
    return spec.N if isinstance(spec, TransformSpec) else TransformSpec(int(spec)).N


# --- real-valued trig sums ---------------------------------------------------

def trig_sum(values, n_idx, k_idx, N: int, fn: str, mode=PrecisionMode.WORKING, dd=False):
    """sum_n values(n) * fn(2*pi*n*k/N) over the given index lists."""
    mode = _check_mode(mode)
    x, lead = _as_batch(np.asarray(values, dtype=float))
    res = _trig_sum([(x, n_idx, fn, 1.0)], k_idx, N, mode)
    return _finish(res, lead, mode, dd)


def naive_dct(values, spec=None, mode=PrecisionMode.WORKING, harmonics=None, dd=False):
    """DCT-0 of ``values`` given at n = 0..N/2 (``N`` inferred if omitted)."""
    values = np.asarray(values, dtype=float)
    N = _N(spec, 2 * (values.shape[-1] - 1))
    ks = range(N // 2 + 1) if harmonics is None else harmonics
    return trig_sum(values, np.arange(N // 2 + 1), list(ks), N, "cos", mode, dd)


def naive_dst(values, spec=None, mode=PrecisionMode.WORKING, harmonics=None, dd=False):
    """DST-0 of ``values`` given at n = 1..N/2-1."""
    values = np.asarray(values, dtype=float)
    N = _N(spec, 2 * (values.shape[-1] + 1))
    ks = range(1, N // 2) if harmonics is None else harmonics
    return trig_sum(values, np.arange(1, N // 2), list(ks), N, "sin", mode, dd)


def naive_cdft(values, spec=None, mode=PrecisionMode.WORKING, dd=False):
    """Complex DFT by direct summation; ``dd=True`` returns ``(hi, lo)``."""
    mode = _check_mode(mode)
    z = np.asarray(values, dtype=complex)
    N = _N(spec, z.shape[-1])
    a, lead = _as_batch(z.real.copy())
    b, _ = _as_batch(z.imag.copy())
    n = np.arange(N)
    re = _trig_sum([(a, n, "cos", 1.0), (b, n, "sin", 1.0)], n, N, mode)
    im = _trig_sum([(b, n, "cos", 1.0), (a, n, "sin", -1.0)], n, N, mode)
    if mode is PrecisionMode.WORKING:
        return (re + 1j * im).reshape(lead + (N,))
    hi = (re[0] + 1j * im[0]).reshape(lead + (N,))
    lo = (re[1] + 1j * im[1]).reshape(lead + (N,))
    return (hi, lo) if dd else hi


def naive_rdft(values, spec=None, mode=PrecisionMode.WORKING, dd=False):
    """Real DFT returned in halfcomplex cells (see ``signals``)."""
    mode = _check_mode(mode)
    x = np.asarray(values, dtype=float)
    N = _N(spec, x.shape[-1])
    n = np.arange(N)
    re = trig_sum(x, n, range(N // 2 + 1), N, "cos", mode, dd=True)
    im = trig_sum(x, n, range(1, N // 2), N, "sin", mode, dd=True)

    def pack(r, i):
        out = np.empty(x.shape[:-1] + (N,))
        out[..., : N // 2 + 1] = r
        out[..., N // 2 + 1:] = -i[..., ::-1]
        return out

    if mode is PrecisionMode.WORKING:
        return pack(re, im)
    hi, lo = pack(re[0], im[0]), pack(re[1], im[1])
    return (hi, lo) if dd else hi


# --- pruned transforms on typed buffers --------------------------------------

_TRIG = {TransformKind.DCT0: "cos", TransformKind.DST0: "sin"}


def pruned_values(buffer: SignalBuffer, harmonics, mode=PrecisionMode.WORKING, dd=False):
    """Evaluate a DCT/DST buffer's defining sum at arbitrary harmonics.

    Harmonics outside ``sto_k`` (for example ``k = -1`` or ``k = N/4``) are
    computed from the same definition.
    """
    if buffer.domain is not Domain.TEMPORAL:
        raise ValueError("pruned transforms take temporal buffers")
    fn = _TRIG.get(buffer.stype.transform)
    if fn is None:
        raise ValueError(f"pruned_values needs a DCT or DST type, got {buffer.stype.name}")
    return trig_sum(buffer.cells, buffer.indices(), list(harmonics), buffer.N, fn, mode, dd)


def pruned_transform(buffer: SignalBuffer, mode=PrecisionMode.WORKING) -> SignalBuffer:
    """Transform of ``buffer`` with unstored samples taken as zero, at ``sto_k``."""
    if buffer.domain is not Domain.TEMPORAL:
        raise ValueError("pruned_transform takes a temporal buffer")
    cells = reference_cells(buffer, mode)
    return SignalBuffer(buffer.stype, buffer.N, Domain.FREQUENCY, cells)


def reference_cells(buffer: SignalBuffer, mode=PrecisionMode.WORKING, dd=False):
    """Frequency cells of ``buffer`` (``(hi, lo)`` when ``dd`` and EXTENDED)."""
    mode = _check_mode(mode)
    stype = buffer.stype
    kind = stype.transform
    N = buffer.N
    if kind is TransformKind.CDFT:
        z = buffer.cells[..., 0::2] + 1j * buffer.cells[..., 1::2]
        res = naive_cdft(z, N, mode, dd=True)
        if mode is PrecisionMode.WORKING:
            return _interleave(res)
        hi, lo = _interleave(res[0]), _interleave(res[1])
        return (hi, lo) if dd else hi
    if kind is TransformKind.RDFT:
        return naive_rdft(buffer.cells, N, mode, dd=dd)
    ks = list(stype.sto_k_rule.indices(N))
    return pruned_values(buffer, ks, mode, dd=dd)


def _interleave(z: np.ndarray) -> np.ndarray:
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def full_signal(buffer: SignalBuffer) -> np.ndarray:
    """Zero-extend a DCT/DST buffer to the full n = 0..N/2 range."""
    out = np.zeros(buffer.cells.shape[:-1] + (buffer.N // 2 + 1,))
    out[..., buffer.indices()] = buffer.cells
    return out


# --- high-precision spot values -------------------------------------------------

def mp_cells(buffer: SignalBuffer, positions, dps: int = 40):
    """Selected frequency cells of one signal, evaluated in mpmath.

    Returns ``(hi, lo)`` float arrays with ``hi + lo`` carrying the value to
    about 106 bits. Intended for spot checks of the EXTENDED mode; the cost
    is O(N) arbitrary-precision products per position.
    """
    if buffer.cells.ndim != 1:
        raise ValueError("mp_cells needs an unbatched buffer")
    stype, N = buffer.stype, buffer.N
    kind = stype.transform
    x = [mpmath.mpf(float(v)) for v in buffer.cells]
    n_idx = buffer.indices()
    hi, lo = [], []
    with mpmath.workdps(dps):
        def tsum(vals, idx, k, fn):
            f = mpmath.cospi if fn == "cos" else mpmath.sinpi
            return mpmath.fsum(v * f(mpmath.mpf(2 * ((n * k) % N)) / N) for v, n in zip(vals, idx))

        for p in positions:
            if kind is TransformKind.CDFT:
                k, part = divmod(int(p), 2)
                a, b = x[0::2], x[1::2]
                if part == 0:
                    val = tsum(a, n_idx, k, "cos") + tsum(b, n_idx, k, "sin")
                else:
                    val = tsum(b, n_idx, k, "cos") - tsum(a, n_idx, k, "sin")
            elif kind is TransformKind.RDFT:
                if p <= N // 2:
                    val = tsum(x, n_idx, int(p), "cos")
                else:
                    val = -tsum(x, n_idx, N - int(p), "sin")
            else:
                k = list(stype.sto_k_rule.indices(N))[int(p)]
                val = tsum(x, n_idx, k, _TRIG[kind])
            h = float(val)
            hi.append(h)
            lo.append(float(val - h))
    return np.array(hi), np.array(lo)


__all__ = [
    "PrecisionMode",
    "naive_cdft",
    "naive_dct",
    "naive_dst",
    "naive_rdft",
    "pruned_transform",
    "pruned_values",
    "reference_cells",
    "trig_sum",
    "full_signal",
    "mp_cells",
    "complex_to_halfcomplex",
    "signal_type",
]
