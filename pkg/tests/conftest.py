import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def record(request):
    """Record one acceptance verdict; lines are echoed in the terminal summary."""
    lines = request.config.stash[_LINES]

    def _record(number, title, passed, detail):
        line = f"AC{number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        lines.append(line)
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
