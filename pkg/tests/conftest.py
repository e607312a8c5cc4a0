import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("repo")

_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line; the summary prints them all at the end."""
    def record(number, ok, detail):
        _VERDICTS.append((number, "PASS" if ok else "FAIL", detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, detail in sorted(_VERDICTS):
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {detail}")
