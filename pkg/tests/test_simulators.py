import numpy as np
import pytest
from scipy.stats import kurtosis

from pathcross import DomainError, ExampleSpec, ProcessSpec, cantor_function, example_path, simulate, tv
from pathcross.simulators import (closed_form_tv, gap_left_ends, gap_levels, k_n_count, rng_for,
                                  scaling_ks, simulate_values)


def test_determinism():
    spec = ProcessSpec("fbm", 512, 1.0, 7, hurst=0.3)
    assert simulate(spec, 3) == simulate(spec, 3)
    assert simulate(spec, 3) != simulate(spec, 4)
    assert rng_for(1, 2).random() == rng_for(1, 2).random()


@pytest.mark.parametrize("kw", [
    dict(kind="fbm", hurst=1.0), dict(kind="fbm"), dict(kind="stable", alpha=1.0),
    dict(kind="rosenblatt", hurst=0.4), dict(kind="bm", n_samples=0), dict(kind="bm", horizon=0.0),
])
def test_invalid_specs(kw):
    with pytest.raises(DomainError):
        ProcessSpec(**kw)


def test_beta_and_mode():
    assert ProcessSpec("bm").beta == 0.5
    assert ProcessSpec("stable", alpha=1.6).beta == pytest.approx(1 / 1.6)
    assert ProcessSpec("stable", alpha=1.6).mode.value == "step"
    assert ProcessSpec("rosenblatt", hurst=0.8).beta == 0.8


def test_bm_increment_variance():
    x = simulate_values(ProcessSpec("fbm", 64, 1.0, 1, hurst=0.5), 400)
    assert np.var(np.diff(x, axis=1)) == pytest.approx(1 / 64, rel=0.05)


def test_fbm_increment_exponent():
    spec = ProcessSpec("fbm", 1024, 1.0, 2, hurst=0.7)
    lag = 16
    x = simulate_values(spec, 200)
    inc = (x[:, lag::lag] - x[:, :-lag:lag]).ravel()
    assert inc.size >= 10_000
    assert np.mean(inc ** 2) == pytest.approx((lag / 1024) ** 1.4, rel=0.05)


def test_stable_two_is_gaussian():
    x = simulate(ProcessSpec("stable", 20000, 1.0, 3, alpha=2.0))
    inc = np.diff(x.values)
    assert kurtosis(inc, fisher=False) == pytest.approx(3.0, abs=0.15)
    assert np.var(inc) == pytest.approx(2 / 20000, rel=0.05)


def test_rosenblatt_runs():
    p = simulate(ProcessSpec("rosenblatt", 256, 1.0, 0, hurst=0.75, approx_grid=64))
    assert len(p) == 257 and p.values[0] == 0 and np.all(np.isfinite(p.values))


def test_self_similarity_bm():
    assert scaling_ks(ProcessSpec("bm", 64, 1.0, 11), 4.0, 500).pvalue > 0.01


def test_cantor_function_values():
    assert cantor_function(0.5) == 0.5
    assert cantor_function(0.0) == 0.0 and cantor_function(1.0) == 1.0
    assert cantor_function(0.15) == 0.25 and cantor_function(0.8) == 0.75
    # 1/4 is in the Cantor set: ternary 0.0202... maps to binary 0.0101...
    assert cantor_function(0.25) == pytest.approx(1 / 3, abs=1e-12)
    with pytest.raises(DomainError):
        cantor_function(1.5)


def test_cantor_monotone():
    t = np.linspace(0, 1, 2001)
    assert np.all(np.diff(cantor_function(t)) >= 0)


def test_k_n_counts():
    assert k_n_count(1.0, 0) == 1
    assert k_n_count(0.5, 1) == 1
    assert k_n_count(0.0, 5) == 0


def test_gap_values_match_counts():
    rng = np.random.default_rng(0)
    for n in range(6):
        left, z = gap_left_ends(n), gap_levels(n)
        width = 3.0 ** -(n + 1)
        k = rng.integers(0, 2 ** n, 10)
        t = left[k] + rng.uniform(0.01, 0.99, 10) * width
        np.testing.assert_array_equal(cantor_function(t, 30), z[k])
        assert [k_n_count(s, n + 1) / 2 ** (n + 1) for s in t] == list(z[k])


def test_example_closed_forms():
    x2 = example_path(ExampleSpec("2", "b:pow2", 12))
    assert tv(x2, 0.25).tv == pytest.approx(2.5, abs=1e-12)
    np.testing.assert_allclose(x2.eval(np.array([1 / 3, 2 / 3, 1.0])), 0.0, atol=1e-15)
    x1 = example_path(ExampleSpec("1", "harmonic", 10 ** 4))
    assert tv(x1, 0.5).tv == pytest.approx(1.0, abs=1e-12)
    cf = closed_form_tv(ExampleSpec("1", "harmonic", 10 ** 4), 0.5)
    assert cf.value == 1.0 and cf.tail == 0.0


def test_example_three_constraint():
    with pytest.raises(DomainError):
        ExampleSpec("3", "harmonic", 4, m_base=2, c_min=1e-3)
    spec = ExampleSpec("3", "harmonic", 4, m_base=4, c_min=1e-3)
    assert spec.gap_mass() < 0.5
    p = example_path(spec)
    assert p.values.min() >= 0 and p.values[-1] == pytest.approx(1.0)


def test_summable_rule_warns():
    with pytest.warns(UserWarning):
        ExampleSpec("1", "pow2", 5)
