import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
CRITERIA = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        CRITERIA[number] = (bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 8):
        if n in CRITERIA:
            ok, detail = CRITERIA[n]
            terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        else:
            terminalreporter.write_line(f"criterion {n}: NOT RUN")
