import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruteforce import conv_same_loop, filter_loop
from mlfilt import filter_engine
from mlfilt.errors import DomainError, GridMismatch, NumericalError
from mlfilt.filter_engine import (
    Signal,
    apply_filter,
    convolve_same,
    edge_normalizer,
    filter_with_kernel,
)
from mlfilt.kernels import KernelSpec, SampledKernel, gaussian_pdf, sample_kernel

TOL = 1e-9


def test_signal_validation():
    with pytest.raises(DomainError):
        Signal(0.0, 0.01, [])
    with pytest.raises(DomainError):
        Signal(0.0, 0.0, [1.0])
    with pytest.raises(DomainError):
        Signal(0.0, 0.01, [1.0, math.nan])
    s = Signal(1.0, 0.5, [1, 2, 3])
    np.testing.assert_array_equal(s.t, [1.0, 1.5, 2.0])


class TestConvolveSame:
    def test_impulse_returns_symmetric_kernel(self):
        a, b, c = 0.2, 0.5, 0.2
        out = convolve_same([0, 0, 1, 0, 0], [a, b, c])
        np.testing.assert_array_equal(out, [0, a, b, c, 0])

    def test_impulse_orientation_on_asymmetric_mask(self):
        out = convolve_same([0, 0, 1, 0, 0], [1.0, 2.0, 3.0])
        # out[i] = y[i - j + 1] w[j]: the impulse at 2 lands w[j] at i = j + 1
        np.testing.assert_array_equal(out, [0, 1, 2, 3, 0])

    def test_zeros(self):
        np.testing.assert_array_equal(convolve_same(np.zeros(9), [1, 2, 1]), np.zeros(9))

    def test_against_loop_fixed(self):
        rng = np.random.default_rng(0)
        y = rng.normal(size=10)
        w = rng.normal(size=5)
        np.testing.assert_allclose(convolve_same(y, w), conv_same_loop(y, w), rtol=0, atol=1e-12)

    def test_kernel_longer_than_signal(self):
        y = [1.0, -2.0, 0.5]
        w = np.arange(1.0, 12.0)
        np.testing.assert_allclose(convolve_same(y, w), conv_same_loop(y, w), atol=1e-12)

    def test_fft_path_matches_direct(self, monkeypatch):
        rng = np.random.default_rng(1)
        y = rng.normal(size=3000)
        w = rng.normal(size=501)
        direct = convolve_same(y, w)
        monkeypatch.setattr(filter_engine, "DIRECT_MAX_TAPS", 100)
        fast = convolve_same(y, w)
        np.testing.assert_allclose(fast, direct, rtol=0, atol=1e-9)


class TestEdgeNormalizer:
    def test_interior_is_weight_sum(self):
        k = sample_kernel(KernelSpec(0.05, 1.2, 1.0))
        den = edge_normalizer(500, k)
        assert den[250] == pytest.approx(k.total, abs=1e-14)

    def test_single_sample(self):
        k = SampledKernel([0.1, 0.7, 0.1], 0.1)
        np.testing.assert_array_equal(edge_normalizer(1, k), [0.7])

    def test_partial_sums(self):
        w = [0.1, 0.2, 0.4, 0.2, 0.1]
        np.testing.assert_allclose(edge_normalizer(7, SampledKernel(w, 1.0)),
                                   conv_same_loop([1.0] * 7, w), atol=1e-15)

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            edge_normalizer(0, [1.0])


class TestApplyFilter:
    def test_grid_mismatch(self):
        with pytest.raises(GridMismatch):
            apply_filter(Signal(0, 0.02, np.ones(10)), KernelSpec(0.1, dt=0.01))

    def test_constant_signal(self):
        out = apply_filter(Signal(0, 0.01, np.full(300, 3.5)), KernelSpec(0.2, 1.2, 1.0))
        np.testing.assert_allclose(out.signal.y, 3.5, rtol=0, atol=1e-12)
        assert out.edge_floor > 0
        assert len(out.signal) == 300 and out.signal.t0 == 0 and out.signal.dt == 0.01

    def test_ramp_against_loop(self):
        dt = 0.01
        y = np.arange(25) * dt
        spec = KernelSpec(0.05, 1.2, 1.0, dt=dt)
        out = apply_filter(Signal(0.0, dt, y), spec)
        ref = filter_loop(list(y), list(sample_kernel(spec).weights))
        np.testing.assert_allclose(out.signal.y, ref, rtol=0, atol=1e-12)

    def test_gaussian_case_matches_closed_form_pipeline(self):
        dt, sigma = 0.01, 0.1
        rng = np.random.default_rng(3)
        y = np.sin(np.arange(400) * dt * 5) + rng.normal(0, 0.1, 400)
        out = apply_filter(Signal(0.0, dt, y), KernelSpec(sigma, 1.0, 1.0, dt=dt))
        half = round(6 * sigma / dt)
        w = dt * gaussian_pdf(np.arange(-half, half + 1) * dt, 0.0, sigma)
        ref = np.convolve(y, w, "same") / np.convolve(np.ones_like(y), w, "same")
        np.testing.assert_allclose(out.signal.y, ref, rtol=0, atol=TOL)

    def test_denominator_guard(self):
        # a zero-sum mask cancels exactly in the interior
        k = SampledKernel([-0.5, 1.0, -0.5], 0.1)
        with pytest.raises(NumericalError):
            filter_with_kernel(Signal(0, 0.1, np.ones(10)), k)


# sigma/dt <= 3.3 with a 3-sigma window keeps kernels at <= 21 taps
random_spec = st.builds(
    lambda ratio, alpha, beta: KernelSpec(0.01 * ratio, alpha, beta,
                                          half_width=0.03 * ratio, dt=0.01),
    st.floats(1.0, 3.3), st.floats(0.2, 2.0), st.floats(0.5, 1.5),
)


@given(random_spec, st.floats(-100, 100), st.sampled_from([1, 2, 10, 1000]))
def test_dc_preservation(spec, c, n):
    out = apply_filter(Signal(0.0, 0.01, np.full(n, c)), spec)
    np.testing.assert_allclose(out.signal.y, c, rtol=0, atol=1e-12 * max(1.0, abs(c)))


@given(st.integers(1, 64), st.integers(0, 10), st.integers(0, 2**32 - 1))
def test_brute_force_equivalence(n, half, seed):
    rng = np.random.default_rng(seed)
    y = rng.normal(size=n)
    w = rng.uniform(0.05, 1.0, size=half + 1)
    w = np.concatenate([w[:0:-1], w])
    out = filter_with_kernel(Signal(0.0, 0.1, y), SampledKernel(w, 0.1))
    np.testing.assert_allclose(out.signal.y, filter_loop(list(y), list(w)), rtol=0, atol=1e-12)


@given(st.integers(0, 2**32 - 1), st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(seed, a, b):
    rng = np.random.default_rng(seed)
    y1, y2 = rng.normal(size=200), rng.normal(size=200)
    spec = KernelSpec(0.05, 1.2, 1.0)
    f = lambda y: apply_filter(Signal(0.0, 0.01, y), spec).signal.y  # noqa: E731
    np.testing.assert_allclose(f(a * y1 + b * y2), a * f(y1) + b * f(y2), rtol=0, atol=1e-10)


@given(st.integers(0, 2**32 - 1), st.integers(1, 20))
def test_interior_shift_equivariance(seed, shift):
    rng = np.random.default_rng(seed)
    spec = KernelSpec(0.03, 0.8, 0.9)
    k = sample_kernel(spec)
    h = k.center_index
    y = rng.normal(size=400)
    f = lambda y: apply_filter(Signal(0.0, 0.01, y), spec).signal.y  # noqa: E731
    base = f(y)
    shifted = f(np.concatenate([np.zeros(shift), y[:-shift]]))
    lo, hi = h + shift, 400 - h
    np.testing.assert_array_equal(shifted[lo:hi], base[lo - shift:hi - shift])


def test_smoothing_monotone_in_sigma():
    rng = np.random.default_rng(11)
    y = rng.normal(size=2000)
    variances = [np.var(apply_filter(Signal(0.0, 0.01, y), KernelSpec(s)).signal.y)
                 for s in (0.05, 0.1, 0.2, 0.4)]
    assert all(b <= a for a, b in zip(variances, variances[1:]))
