import pytest
from hypothesis import HealthCheck, settings

from balayage.numerics import QuadratureRule

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def fine_rule():
    return QuadratureRule(32, 256, 8)


@pytest.fixture(scope="session")
def suite_rule():
    return QuadratureRule(24, 512, 10)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
        terminalreporter.write_line(line)
