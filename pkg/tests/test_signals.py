import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from amqft.signals import (
    SIGNAL_TYPES,
    Domain,
    SignalBuffer,
    TransformKind,
    TransformSpec,
    complex_to_halfcomplex,
    halfcomplex_to_complex,
    log2,
    signal_type,
    sto_indices,
    storage_position,
)

T, F = Domain.TEMPORAL, Domain.FREQUENCY

# (sto_n, sto_k) written out by hand at N = 32.
EXPECTED_32 = {
    "s_dc_tt": (range(0, 17), range(0, 17)),
    "s_dc_et": (range(0, 17, 2), range(0, 9)),
    "s_dc_ot": (range(1, 16, 2), range(0, 8)),
    "s_dc_te": (range(0, 9), range(0, 17, 2)),
    "s_dc_to": (range(0, 8), range(1, 16, 2)),
    "s_dc_oe": (range(1, 8, 2), range(0, 7, 2)),
    "s_dc_eo": (range(0, 7, 2), range(1, 8, 2)),
    "s_dc_oo": (range(1, 8, 2), range(1, 8, 2)),
    "s_ds_tt": (range(1, 16), range(1, 16)),
    "s_ds_et": (range(2, 15, 2), range(1, 8)),
    "s_ds_te": (range(1, 8), range(2, 15, 2)),
    "s_ds_to": (range(1, 9), range(1, 16, 2)),
    "s_ds_ot": (range(1, 16, 2), range(1, 9)),
    "s_ds_oe": (range(1, 8, 2), range(2, 9, 2)),
    "s_ds_eo": (range(2, 9, 2), range(1, 8, 2)),
    "s_ds_oo": (range(1, 8, 2), range(1, 8, 2)),
}


def test_eighteen_types():
    assert len(SIGNAL_TYPES) == 18


@pytest.mark.parametrize("name", sorted(EXPECTED_32))
def test_index_sets_at_32(name):
    n, k = EXPECTED_32[name]
    assert sto_indices(name, 32, T) == list(n)
    assert sto_indices(name, 32, F) == list(k)


@pytest.mark.parametrize("name", sorted(SIGNAL_TYPES))
@pytest.mark.parametrize("N", [8, 16, 64, 1024])
def test_lengths_match_index_sets(name, N):
    stype = SIGNAL_TYPES[name]
    factor = 2 if stype.transform is TransformKind.CDFT else 1
    for dom in (T, F):
        assert stype.length(N, dom) == factor * len(sto_indices(name, N, dom))


def test_min_sizes():
    mins = {name: t.min_n for name, t in SIGNAL_TYPES.items()}
    assert mins["s_cx_tt"] == mins["s_re_tt"] == mins["s_dc_tt"] == 2
    assert mins["s_ds_tt"] == mins["s_dc_ot"] == mins["s_ds_to"] == 4
    assert all(mins[f"s_{c}_{s}"] == 8 for c in ("dc", "ds") for s in ("oe", "eo", "oo"))


def test_storage_position_and_interleave():
    assert storage_position("s_dc_ot", 32, T, 7) == 3
    assert storage_position("s_cx_tt", 8, F, 3) == 6
    with pytest.raises(ValueError):
        storage_position("s_dc_ot", 32, T, 2)


def test_buffer_validation():
    with pytest.raises(ValueError):
        SignalBuffer("s_dc_oo", 16, T, np.zeros(3))
    with pytest.raises(ValueError):
        SignalBuffer("s_dc_oo", 4, T, np.zeros(0))
    with pytest.raises(ValueError):
        signal_type("s_xx_tt")
    with pytest.raises(ValueError):
        TransformSpec(12)
    buf = SignalBuffer("s_dc_oo", 16, T, np.zeros((5, 2)))
    assert buf.cells.shape == (5, 2)


def test_from_values_round_trip():
    N = 16
    vals = np.arange(N // 2 + 1, dtype=float)
    buf = SignalBuffer.from_values("s_dc_ot", N, T, vals)
    assert buf.to_dict() == {n: float(n) for n in range(1, 8, 2)}
    z = np.arange(4) + 1j * np.arange(4)[::-1]
    cbuf = SignalBuffer.from_values("s_cx_tt", 4, T, z)
    assert cbuf.to_dict() == dict(enumerate(z))


@given(st.integers(1, 9).map(lambda e: 2**e), st.integers(0, 2**32 - 1))
def test_halfcomplex_round_trip(N, seed):
    x = np.random.default_rng(seed).standard_normal(N)
    spec = np.fft.fft(x)
    cells = complex_to_halfcomplex(spec)
    np.testing.assert_allclose(halfcomplex_to_complex(cells), spec, atol=1e-9)


def test_kind_parsing_and_log2():
    assert TransformKind.parse("DCT0") is TransformKind.DCT0
    assert TransformKind.parse("cdft") is TransformKind.CDFT
    with pytest.raises(ValueError):
        TransformKind.parse("dht")
    assert log2(1024) == 10
    with pytest.raises(ValueError):
        log2(24)
