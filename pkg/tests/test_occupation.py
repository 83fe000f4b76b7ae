import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import any_paths
from pathcross import DomainError, SampledPath, occupation_density, occupation_integral, tv
from pathcross.occupation import crossing_measure_integral, weak_gap


def test_ramp_density():
    ramp = SampledPath([0, 1], [0, 1], "linear")
    est = occupation_density(ramp, 1.0, [0.0, 1.0])
    np.testing.assert_allclose(est.density, [1.0])
    assert occupation_integral(ramp, 1.0, "poly:0,1") == pytest.approx(0.5)


def test_zigzag_density(zigzag):
    est = occupation_density(zigzag, 2.0, [0.0, 0.5, 1.0])
    np.testing.assert_allclose(est.density, [2.0, 2.0])
    assert occupation_integral(zigzag, 2.0, "poly:0,0,1") == pytest.approx(2 / 3)


def test_constant_step_path():
    p = SampledPath([0, 1], [0.3, 0.3], "step")
    est = occupation_density(p, 0.5, [0.0, 0.25, 0.5])
    np.testing.assert_allclose(est.density, [0.0, 0.5 / 0.25])


def test_bins_must_cover(zigzag):
    with pytest.raises(DomainError):
        occupation_density(zigzag, 2.0, [0.0, 0.5])


@given(any_paths(), st.floats(0.05, 1.0))
def test_total_time(p, frac):
    t = frac * p.horizon
    x = p.restrict(0.0, t).values
    edges = np.linspace(x.min() - 1, x.max() + 1, 7)
    est = occupation_density(p, t, edges)
    assert est.total_time == pytest.approx(t, rel=1e-9)
    assert occupation_integral(p, t, "poly:1") == pytest.approx(t, rel=1e-9)


@given(any_paths(), st.floats(0.01, 2.0))
def test_crossing_integral_with_unit_g(p, c):
    phi = 1.0 / (1.0 + tv(p, c).tv)
    got = crossing_measure_integral(p, p.horizon, c, phi, "poly:1")
    assert got == pytest.approx(phi * tv(p, c).tv, rel=1e-9, abs=1e-12)
    assert crossing_measure_integral(p, p.horizon, c, phi, "poly:0") == 0.0


def test_weak_gap_against_itself(zigzag):
    ref = lambda t: crossing_measure_integral(zigzag, t, 0.2, 0.5, "poly:0,1")  # noqa: E731
    assert weak_gap(zigzag, [0.5, 1.0, 2.0], 0.2, 0.5, "poly:0,1", ref) == 0.0
