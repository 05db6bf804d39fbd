import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("lab", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lab")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_point(rng, decomp, lo=0.3, hi=3.0):
    from fnlab.surface import make_fn_point
    ls = np.exp(rng.uniform(math.log(lo), math.log(hi), decomp.n_curves))
    th = rng.uniform(0.0, 2.0 * math.pi, decomp.n_interior)
    return make_fn_point(decomp, ls, th)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "acceptance":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
