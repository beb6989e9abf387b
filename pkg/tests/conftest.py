import math

import numpy as np
import pytest
from hypothesis import strategies as st

from tritter.coupler import DeviceParams

angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
strengths = st.floats(0, 4 * math.pi, allow_nan=False)
devices = st.builds(DeviceParams, strengths, angles, angles, angles)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_device(rng) -> DeviceParams:
    G, theta = rng.uniform(0, 4 * math.pi), rng.uniform(-math.pi, math.pi)
    psi, phi = rng.uniform(-math.pi, math.pi, 2)
    return DeviceParams(G, theta, psi, phi)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
