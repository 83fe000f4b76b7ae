import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import any_paths
from pathcross import DomainError, SampledPath, regularize, skorohod_map, tv, utv
from pathcross.skorohod import regularize_solution


def test_hand_clamp():
    p = SampledPath([0, 1, 2], [0, 1, 0.2], "step")
    sol = skorohod_map(p, -0.25, 0.25, 0.0)
    np.testing.assert_allclose(sol.phi.values, [0, 0.25, -0.25])
    np.testing.assert_allclose(sol.regularization.values, [0, 0.75, 0.45])


def test_no_reflection_inside_band():
    p = SampledPath.regular([0.0, 0.1, -0.05, 0.08], 1.0, "linear")
    sol = skorohod_map(p, -0.2, 0.2, 0.0)
    assert sol.eta_u_total == 0 and sol.eta_d_total == 0
    np.testing.assert_allclose(sol.phi.values, p.values, atol=1e-15)


def test_monotone_pushes_equal_utv():
    p = SampledPath.regular(np.linspace(0, 3, 31), 1.0, "linear")
    sol = regularize_solution(p, 0.5)
    assert sol.eta_u_total == pytest.approx(utv(p, 0.5)) == pytest.approx(2.5)


def test_square_wave():
    p = SampledPath.regular([0.0, 1.0, 0.0, 1.0], 1.0, "step")
    xc = regularize(p, 0.5)
    assert np.sum(np.abs(np.diff(xc.values))) == pytest.approx(tv(p, 0.5).tv)


def test_constant_path():
    xc = regularize(SampledPath.regular([2.0] * 6, 1.0, "linear"), 0.3)
    assert np.ptp(xc.values) == 0


@pytest.mark.parametrize("a, b, phi0", [(0.1, 0.1, 0.1), (0.2, -0.2, 0.0), (-0.1, 0.1, 0.5)])
def test_bad_barriers(a, b, phi0):
    with pytest.raises(DomainError):
        skorohod_map(SampledPath.regular([0.0, 1.0]), a, b, phi0)


@given(any_paths(), st.floats(0.01, 3.0))
def test_invariants(p, c):
    sol = regularize_solution(p, c)
    x, xc = p.values, sol.regularization.values
    lo, hi = sol.barriers
    phi = sol.phi.values
    assert np.all(phi >= lo - 1e-12) and np.all(phi <= hi + 1e-12)
    assert np.max(np.abs(x - xc)) <= c / 2 + 1e-12
    # pushes only at the touched barrier
    dd, du = np.diff(sol.eta_d.values), np.diff(sol.eta_u.values)
    assert np.all(dd >= 0) and np.all(du >= 0)
    assert np.all(np.abs(phi[1:][dd > 0] - lo) <= 1e-12)
    assert np.all(np.abs(phi[1:][du > 0] - hi) <= 1e-12)
    # x^c moves by exactly the truncated variations
    r = tv(p, c)
    assert xc[-1] - xc[0] == pytest.approx(r.utv - r.dtv, abs=1e-9)
    assert utv(SampledPath(p.times, xc, p.mode), 0.0) <= r.utv + c + 1e-12
