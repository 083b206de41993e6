import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash[_LINES]

    def record(number: int, passed: bool, detail: str) -> bool:
        lines.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
