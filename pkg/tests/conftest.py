import pytest

from racklab.corpus import rack_corpus

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return rack_corpus()


@pytest.fixture
def record():
    """Record one acceptance line; printed in the terminal summary."""
    def _record(label, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {label}" + (f" -- {detail}" if detail else ""))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
