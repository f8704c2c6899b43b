import os

import pytest
from hypothesis import HealthCheck, settings

from scattered_lab.gf import field_for_q

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

# lines recorded by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def F3():
    return field_for_q(3, 6)


@pytest.fixture(scope="session")
def F4():
    return field_for_q(4, 6)


@pytest.fixture(scope="session")
def F5():
    return field_for_q(5, 6)


@pytest.fixture(scope="session")
def F9():
    return field_for_q(9, 6)


@pytest.fixture(scope="session")
def F34():
    return field_for_q(3, 4)
