import pytest
from hypothesis import HealthCheck, settings

from gradedpi import builtin

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CROSS_PATH = ["field", "group_algebra:Z_2", "group_algebra:Z_3", "M2_Z2", "nilpotent_1",
              "dual_numbers"]


@pytest.fixture(scope="session")
def algebras():
    return {name: builtin(name) for name in CROSS_PATH + ["M2", "direct_sum_Z2", "cross3"]}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import summary_lines
    except ImportError:
        return
    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
