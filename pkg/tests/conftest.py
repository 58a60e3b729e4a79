import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# JIT compilation makes first calls slow; per-example deadlines are meaningless here
settings.register_profile(
    "pulsevg",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pulsevg")


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    """Compile the graph kernel once so timings and deadlines stay honest."""
    from pulsevg import TimeSeries, build_vg_fast

    build_vg_fast(TimeSeries(np.array([0.0, 1.0, 0.5, 2.0]), 1.0))
