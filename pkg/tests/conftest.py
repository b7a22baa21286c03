import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from conjnormal import make_rng

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

N2 = np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def n2():
    return N2.copy()


@pytest.fixture
def rng(request):
    # one independent stream per test, stable across runs
    return make_rng(1234, abs(hash(request.node.name)) % (2 ** 32))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
