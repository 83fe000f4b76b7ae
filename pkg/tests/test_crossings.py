import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import any_paths
from pathcross import CapacityError, SampledPath, crossings, indicatrix, indicatrix_integral, tv
from pathcross.crossings import (banach_vitali_check, downcrossings, level_upcrossings,
                                 upcrossings)
from pathcross.testfunctions import ONE


def test_band_crossings(square4):
    assert downcrossings(square4, 0.5, 0.4) == 2
    assert upcrossings(square4, 0.5, 0.4) == 2
    # lower barrier 0 is never passed strictly
    assert downcrossings(square4, 0.2, 0.4) == 0
    assert upcrossings(square4, 0.2, 0.4) == 2
    assert crossings(square4, 0.5, 0.4).total == 4


def test_monotone_paths():
    up = SampledPath.regular(np.linspace(0, 1, 11), 1.0, "linear")
    assert downcrossings(up, 0.5, 0.2) == 0
    assert upcrossings(-up, 0.5, 0.2) == 0


def test_level_crossings(zigzag):
    assert level_upcrossings(SampledPath([0, 1, 2], [0, 1, 0.3], "step"), 0.5) == 1
    z = SampledPath([0, 1, 2, 3], [0, 1, 0, 1], "linear")
    assert level_upcrossings(z, 0.5) == 2
    assert level_upcrossings(z, 1.5) == 0


def test_indicatrix_profile(square4):
    prof = indicatrix(square4, 0.4)
    assert prof(0.5) == 4 and prof(0.3) == 4 and prof(0.79) == 4
    assert prof(-1.0) == 0 and prof(2.0) == 0
    assert prof.integral(ONE) == pytest.approx(2.4)
    assert indicatrix_integral(square4, 0.4, "poly:0,1") == pytest.approx(1.2)
    assert indicatrix_integral(square4, 0.4, "poly:0") == 0.0


def test_ramp_indicatrix():
    ramp = SampledPath([0, 1], [0, 3], "linear")
    prof = indicatrix(ramp, 1.0)
    assert prof(1.5) == 1 and prof(0.4) == 0 and prof(2.6) == 0
    assert indicatrix_integral(ramp, 1.0) == pytest.approx(2.0)


def test_constant_profile():
    assert indicatrix_integral(SampledPath.regular([1.0] * 5), 0.1) == 0.0


def test_direct_refuses_long_paths():
    p = SampledPath.regular(np.zeros(5000), 1.0, "linear")
    with pytest.raises(CapacityError):
        indicatrix(p, 0.1, method="direct")


@given(any_paths(), st.floats(0.001, 3.0))
def test_indicatrix_equals_tv(p, c):
    ref = tv(p, c).tv
    for method in ("direct", "legs"):
        got = indicatrix_integral(p, c, method=method)
        assert got == pytest.approx(ref, rel=1e-9, abs=1e-12)


@given(any_paths(), st.floats(0.01, 2.0), st.floats(-2, 2))
def test_negation_swaps_directions(p, c, y):
    assert upcrossings(p, y, c) == downcrossings(-p, -y, c)


def test_banach_vitali_hand_value():
    p = SampledPath([0, 1, 2], [0, 1, 0.3], "step")
    lhs, rhs = banach_vitali_check(p, "poly:0,1", t=2)
    assert lhs == pytest.approx(0.5) and rhs == pytest.approx(0.5)


@given(any_paths(), st.sampled_from(["poly:1", "poly:0,1", "poly:0,0,1", "gauss:0,1"]),
       st.sampled_from(["up", "down"]))
def test_banach_vitali(p, g, direction):
    lhs, rhs = banach_vitali_check(p, g, direction=direction)
    assert lhs == pytest.approx(rhs, abs=1e-9)
