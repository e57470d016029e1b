import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance():
    """Record a criterion outcome; the lines are echoed in the summary."""

    def record(number: int, description: str, passed: bool) -> bool:
        mark = "PASS" if passed else "FAIL"
        line = f"{mark}  criterion {number:2d}: {description}"
        _acceptance_lines.append(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(set(_acceptance_lines)):
            terminalreporter.write_line(line)
