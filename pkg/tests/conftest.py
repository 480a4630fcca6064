import pytest

from cournot_demand.zoo import standard_zoo

ZOO = standard_zoo()

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def zoo():
    return ZOO


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line for the end-of-run acceptance summary."""
    def record(label, passed, detail=""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
