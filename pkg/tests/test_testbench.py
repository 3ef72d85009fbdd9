import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlfilt.errors import DomainError, NumericalError
from mlfilt.filter_engine import Signal
from mlfilt.kernels import KernelSpec, SampledKernel
from mlfilt.testbench import (
    GENERATOR_ID,
    BenchConfig,
    add_noise,
    gen_y1,
    gen_y2,
    mse,
    run_bench,
    seed_sweep,
    published_config,
)


def _at(sig, t):
    i = int(round((t - sig.t0) / sig.dt))
    assert math.isclose(sig.t[i], t, abs_tol=1e-12)
    return sig.y[i]


class TestSignals:
    def test_y1_values(self):
        s = gen_y1(0.0, 5.0, 0.01)
        assert len(s) == 501
        assert _at(s, 0.0) == pytest.approx(math.sin(1.0), abs=1e-15)
        # independent mpmath evaluation of exp(-1) sin(4)
        assert _at(s, 1.0) == pytest.approx(-0.27841207905103374, abs=1e-14)

    def test_y1_zero(self):
        t0 = (math.pi - 1) / 3
        s = gen_y1(t0, t0 + 1.0, 0.01)
        assert abs(s.y[0]) < 1e-15

    def test_y2_values(self):
        s = gen_y2(0.0, 2.8, 0.01)
        assert len(s) == 281
        assert _at(s, 0.0) == pytest.approx(1.0, abs=1e-15)
        assert _at(s, 0.35) == pytest.approx(0.41221474770752698, abs=1e-14)
        assert _at(s, 0.7) == pytest.approx(-0.30901699437494769, abs=1e-14)

    def test_bad_window(self):
        with pytest.raises(DomainError):
            gen_y1(1.0, 1.0)


class TestNoise:
    def test_zero_noise_is_identity(self):
        clean = gen_y2()
        ns = add_noise(clean, 0.0, 3)
        np.testing.assert_array_equal(ns.noisy.y, clean.y)

    def test_deterministic(self):
        clean = gen_y1()
        a = add_noise(clean, 0.1, 42).noisy.y
        b = add_noise(clean, 0.1, 42).noisy.y
        assert a.tobytes() == b.tobytes()
        assert add_noise(clean, 0.1, 43).noisy.y.tobytes() != a.tobytes()

    def test_moments(self):
        clean = Signal(0.0, 0.01, np.zeros(10_000))
        eps = add_noise(clean, 0.1, 42).noisy.y
        # standard errors: 0.1/sqrt(1e4) = 1e-3 for the mean, ~7e-4 for the std
        assert abs(eps.mean()) <= 0.004
        assert 0.097 <= eps.std(ddof=1) <= 0.103

    def test_shared_grid(self):
        ns = add_noise(gen_y1(), 0.1, 1)
        assert ns.clean.t0 == ns.noisy.t0 and ns.clean.dt == ns.noisy.dt
        assert len(ns.clean) == len(ns.noisy)

    def test_negative_std(self):
        with pytest.raises(DomainError):
            add_noise(gen_y1(), -0.1, 0)


class TestMSE:
    def test_examples(self):
        a = Signal(0, 0.1, [1.0, 2.0, 3.0, 4.0, 5.0])
        assert mse(a, a) == 0.0
        assert mse(a, a.with_values(a.y + 0.1)) == pytest.approx(0.01, abs=1e-15)
        b = a.with_values([1.5, 1.0, 3.0, 6.0, 4.0])
        # (0.25 + 1 + 0 + 4 + 1) / 5
        assert mse(a, b) == pytest.approx(1.25, abs=1e-15)

    @given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=50), st.integers(0, 1000))
    def test_symmetric_and_nonnegative(self, ys, seed):
        a = Signal(0, 0.1, ys)
        b = a.with_values(np.random.default_rng(seed).normal(size=len(ys)))
        assert mse(a, b) == mse(b, a) >= 0.0

    def test_mismatch(self):
        with pytest.raises(DomainError):
            mse(Signal(0, 0.1, [1, 2]), Signal(0, 0.1, [1]))


class TestRunBench:
    def test_published_parameters(self):
        c1 = published_config("y1", seed=7)
        assert (c1.gaussian_spec.sigma, c1.gaussian_spec.alpha, c1.gaussian_spec.beta) == (0.2, 1.0, 1.0)
        assert (c1.ml_spec.sigma, c1.ml_spec.alpha, c1.ml_spec.beta) == (0.2, 1.2, 1.0)
        c2 = published_config("y2", seed=7)
        assert (c2.ml_spec.sigma, c2.ml_spec.alpha, c2.ml_spec.beta) == (0.1, 0.95, 0.90)
        assert (c1.t_start, c1.t_end, c2.t_end, c1.dt, c1.noise_std) == (0.0, 5.0, 2.8, 0.01, 0.1)

    def test_report_is_deterministic(self):
        cfg = published_config("y1", seed=7)
        a, b = run_bench(cfg), run_bench(cfg)
        assert a.rows == b.rows and a.to_csv() == b.to_csv()

    def test_identical_filters_give_identical_rows(self):
        spec = KernelSpec(0.2, 1.0, 1.0)
        rep = run_bench(BenchConfig("y1", spec, spec, noise_std=0.0))
        assert rep.row("gaussian").mse == rep.row("ml").mse > 0.0

    def test_noise_free_mse_independent_of_seed(self):
        base = published_config("y2", noise_std=0.0)
        r1 = run_bench(base)
        r2 = run_bench(BenchConfig(**{**base.__dict__, "seed": 99}))
        assert r1.rows == r2.rows

    def test_ml_wins_for_published_pairs(self):
        for sid in ("y1", "y2"):
            rep = run_bench(published_config(sid, seed=7))
            assert rep.row("ml").mse < rep.row("gaussian").mse

    def test_csv_format(self):
        rep = run_bench(published_config("y1", seed=3))
        lines = rep.to_csv().splitlines()
        assert lines[0] == f"# seed=3 noise_std=0.1 generator={GENERATOR_ID} t=[0.0,5.0] dt=0.01"
        assert lines[1] == "label,sigma,alpha,beta,mse"
        assert lines[2].startswith("gaussian,0.2,1.0,1.0,")
        assert lines[3].startswith("ml,0.2,1.2,1.0,")

    def test_errors_name_the_configuration(self, monkeypatch):
        from mlfilt import testbench

        monkeypatch.setattr(testbench, "sample_kernel",
                            lambda spec, acc=None: SampledKernel([-0.5, 1.0, -0.5], 0.01))
        with pytest.raises(NumericalError, match=r"\[gaussian"):
            run_bench(published_config("y1"))

    def test_unknown_signal(self):
        with pytest.raises(DomainError):
            published_config("y3")


def test_seed_sweep_reports_fraction():
    sw = seed_sweep("y2", range(5))
    assert 0.0 <= sw.ml_win_fraction <= 1.0
    assert "of 5 seeds" in sw.summary()
