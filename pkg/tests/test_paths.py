import numpy as np
import pytest

from pathcross import DomainError, SampledPath
from pathcross.paths import Mode


def test_step_eval_is_right_continuous():
    p = SampledPath([0, 1, 2], [0, 1, 0], "step")
    assert p.eval(1.0) == 1
    assert p.eval(0.99) == 0
    assert p.left_limit(1.0) == 0
    assert p.left_limit(1.5) == 1


def test_linear_eval_interpolates():
    p = SampledPath([0, 2], [0, 1], "linear")
    assert p.eval(1.0) == 0.5
    assert p.left_limit(1.0) == 0.5


def test_jumps():
    p = SampledPath([0, 1, 2], [0, 1, 0.3], "step")
    got = [(j.time, j.delta) for j in p.jumps()]
    assert got[0] == (1.0, 1.0)
    assert got[1][0] == 2.0 and got[1][1] == pytest.approx(-0.7)
    assert SampledPath([0, 1, 2], [0, 1, 0.3], "linear").jumps() == []
    assert SampledPath([0, 1], [5, 5], "step").jumps() == []


def test_restrict_rebases():
    p = SampledPath([0, 1, 2], [0, 1, 0], "step")
    r = p.restrict(0.5, 1.5)
    np.testing.assert_array_equal(r.times[[0, -1]], [0.0, 1.0])
    assert r.eval(0.0) == 0 and r.eval(0.6) == 1
    assert p.restrict(0, 2) == p
    q = SampledPath([0, 2], [0, 1], "linear").restrict(0.5, 1.5)
    np.testing.assert_allclose(q.values[[0, -1]], [0.25, 0.75])
    np.testing.assert_allclose(q.times[[0, -1]], [0.0, 1.0])


@pytest.mark.parametrize("times, values", [
    ([0, 0], [1, 2]),
    ([1, 0], [1, 2]),
    ([0, 1], [1, np.nan]),
    ([0, 1], [1]),
])
def test_rejects_bad_samples(times, values):
    with pytest.raises(DomainError):
        SampledPath(times, values)


def test_csv_round_trip(tmp_path):
    p = SampledPath([0, 0.5, 1.25], [0.1, -3.0, 1e-17], "step")
    f = tmp_path / "p.csv"
    p.to_csv(f)
    q = SampledPath.from_csv(f)
    assert q == p and q.mode is Mode.STEP
    assert SampledPath.from_csv(f, "linear").mode is Mode.LINEAR


def test_missing_file_names_path(tmp_path):
    with pytest.raises(OSError, match="nope.csv"):
        SampledPath.from_csv(tmp_path / "nope.csv")
