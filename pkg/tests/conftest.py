import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from pathcross import SampledPath

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def step_paths(draw, min_size=1, max_size=64):
    vals = draw(st.lists(finite, min_size=min_size, max_size=max_size))
    return SampledPath.regular(np.array(vals), 1.0, "step")


@st.composite
def any_paths(draw, min_size=2, max_size=48):
    vals = draw(st.lists(finite, min_size=min_size, max_size=max_size))
    mode = draw(st.sampled_from(["step", "linear"]))
    return SampledPath.regular(np.array(vals), float(len(vals) - 1), mode)


@pytest.fixture
def zigzag():
    return SampledPath([0.0, 1.0, 2.0], [0.0, 1.0, 0.0], "linear")


@pytest.fixture
def square4():
    return SampledPath([0, 1, 2, 3, 4], [0.0, 1.0, 0.0, 1.0, 0.0], "step")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
