import pytest

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_line():
    def emit(number: int, ok: bool, detail: str, seconds: float):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail} ({seconds:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
