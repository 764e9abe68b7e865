import pytest
from hypothesis import HealthCheck, settings

from homkit.corpus import h4
from homkit.exactlin import QQ, Field

settings.register_profile(
    "homkit", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("homkit")

GF5 = Field("GF", 5)
GF3 = Field("GF", 3)


@pytest.fixture(params=[QQ, GF5], ids=["Q", "gf5"])
def field(request):
    return request.param


@pytest.fixture
def H(field):
    return h4(field)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k)):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
