"""Naive oracle checked against numpy's FFT and against mpmath."""
import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from amqft.oracle import (
    PrecisionMode,
    mp_cells,
    naive_cdft,
    naive_dct,
    naive_dst,
    naive_rdft,
    pruned_transform,
    pruned_values,
    reference_cells,
    trig_sum,
)
from amqft.signals import (
    Domain,
    SignalBuffer,
    SIGNAL_TYPES,
    complex_to_halfcomplex,
    halfcomplex_to_complex,
)

EXT = PrecisionMode.EXTENDED
SIZES = [2, 4, 8, 16, 64, 256]


def fft_dct0(s):
    """Type-0 cosine sum through an even extension and numpy's FFT."""
    M = len(s) - 1
    e = np.zeros(2 * M)
    e[: M + 1] = s
    e[M + 1:] = s[1:M][::-1]
    # Interior samples appear twice in the extension.
    full = np.fft.fft(e).real[: M + 1]
    return 0.5 * (full + s[0] + s[M] * (-1.0) ** np.arange(M + 1))


def fft_dst0(s):
    M = len(s) + 1
    o = np.zeros(2 * M)
    o[1:M] = s
    o[M + 1:] = -s[::-1]
    return -0.5 * np.fft.fft(o).imag[1:M]


@pytest.mark.parametrize("N", SIZES)
def test_cdft_matches_numpy(N, rng):
    z = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    np.testing.assert_allclose(naive_cdft(z), np.fft.fft(z), atol=1e-12 * N)
    np.testing.assert_allclose(naive_cdft(z, mode=EXT), np.fft.fft(z), atol=1e-12 * N)


@pytest.mark.parametrize("N", SIZES)
def test_rdft_halfcomplex_matches_numpy(N, rng):
    x = rng.standard_normal(N)
    spec = np.fft.fft(x)
    np.testing.assert_allclose(naive_rdft(x), complex_to_halfcomplex(spec), atol=1e-12 * N)
    np.testing.assert_allclose(halfcomplex_to_complex(naive_rdft(x, mode=EXT)), spec, atol=1e-12 * N)


@pytest.mark.parametrize("N", [4, 8, 32, 128])
def test_dct_dst_match_fft_extensions(N, rng):
    s = rng.standard_normal(N // 2 + 1)
    np.testing.assert_allclose(naive_dct(s), fft_dct0(s), atol=1e-12 * N)
    d = rng.standard_normal(N // 2 - 1)
    np.testing.assert_allclose(naive_dst(d), fft_dst0(d), atol=1e-12 * N)
    np.testing.assert_allclose(naive_dst(d, mode=EXT), fft_dst0(d), atol=1e-12 * N)


def test_small_cases_by_hand():
    assert np.allclose(naive_cdft([1, 2]), [3, -1])
    assert np.allclose(naive_dct([1.0, 2.0]), [3.0, -1.0])
    # N = 4: the single DST sample sits at a quarter turn.
    assert np.allclose(naive_dst([5.0]), [5.0])
    assert np.allclose(naive_rdft([1.0, 0.0, 0.0, 0.0]), [1.0, 1.0, 1.0, 0.0])


@pytest.mark.parametrize("N", [16, 128, 1024])
def test_extended_precision_against_mpmath(N, rng):
    x = rng.uniform(-1, 1, 2 * N)
    buf = SignalBuffer("s_cx_tt", N, Domain.TEMPORAL, x)
    hi, lo = reference_cells(buf, EXT, dd=True)
    pos = rng.choice(2 * N, size=6, replace=False)
    mh, ml = mp_cells(buf, pos)
    resid = (hi[pos] - mh) + (lo[pos] - ml)
    assert np.max(np.abs(resid)) <= 1e-24 * np.linalg.norm(hi)


def test_extended_beats_working_on_cancellation():
    # Large values that cancel exactly at k = 0 leave a tiny true result.
    N = 64
    x = np.zeros(N)
    x[0], x[1], x[2] = 1e16, 1.0, -1e16
    ref = [float(mpmath.fsum(mpmath.mpf(v) * mpmath.cospi(mpmath.mpf(2 * n * 3) / N)
                             for n, v in enumerate(x)))]
    ext = trig_sum(x, np.arange(N), [3], N, "cos", EXT)
    assert ext[0] == pytest.approx(ref[0], rel=1e-12)


@given(arrays(np.float64, 17, elements=st.floats(-1e3, 1e3)),
       arrays(np.float64, 17, elements=st.floats(-1e3, 1e3)),
       st.floats(-4, 4), st.floats(-4, 4))
def test_linearity(a, b, p, q):
    lhs = naive_dct(p * a + q * b)
    rhs = p * naive_dct(a) + q * naive_dct(b)
    scale = 1 + np.abs(a).sum() * abs(p) + np.abs(b).sum() * abs(q)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@given(st.integers(1, 7).map(lambda e: 2**e), st.integers(0, 2**32 - 1))
def test_parseval_cdft(N, seed):
    r = np.random.default_rng(seed).standard_normal((2, N))
    z = r[0] + 1j * r[1]
    Z = naive_cdft(z, mode=EXT)
    assert np.sum(np.abs(Z) ** 2) == pytest.approx(N * np.sum(np.abs(z) ** 2), rel=1e-12)


def test_batched_equals_rowwise(rng):
    x = rng.standard_normal((3, 4, 9))
    out = naive_dct(x, mode=EXT)
    for i in range(3):
        for j in range(4):
            np.testing.assert_array_equal(out[i, j], naive_dct(x[i, j], mode=EXT))


@pytest.mark.parametrize("name", sorted(n for n in SIGNAL_TYPES if n[2:4] in ("dc", "ds")))
def test_pruned_transform_zero_fills_unstored_samples(name, rng):
    st_ = SIGNAL_TYPES[name]
    N = 32
    buf = SignalBuffer(st_, N, Domain.TEMPORAL, rng.standard_normal(st_.length(N, Domain.TEMPORAL)))
    full = np.zeros(N // 2 + 1)
    full[buf.indices()] = buf.cells
    if st_.transform.value == "dct":
        dense = naive_dct(full)
    else:
        dense = np.concatenate([[0.0], naive_dst(full[1:-1]), [0.0]])
    got = pruned_transform(buf).cells
    ks = list(st_.sto_k_rule.indices(N))
    np.testing.assert_allclose(got, dense[ks], atol=1e-12)


def test_pruned_values_outside_stored_harmonics(rng):
    buf = SignalBuffer("s_dc_oo", 32, Domain.TEMPORAL, rng.standard_normal(4))
    # Cosine sums are even in k.
    v = pruned_values(buf, [-3, 3])
    assert v[0] == pytest.approx(v[1])


def test_bad_mode_rejected():
    with pytest.raises(ValueError):
        naive_cdft([1, 2], mode="quad")
