import pytest

# criterion number -> (title, verdict, detail), filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, verdict, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} [{verdict}] {title}: {detail}")


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE
