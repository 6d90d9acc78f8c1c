import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def record_criterion(request):
    """Log one PASS/FAIL line per acceptance criterion for the summary."""

    def record(tag: str, ok: bool, detail: str) -> None:
        request.config.stash[_LINES].append(f"{'PASS' if ok else 'FAIL'}  {tag}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
