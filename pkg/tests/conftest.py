import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--full-cut", action="store_true", default=False,
                     help="cut oracle sweep over every connected 8-vertex graph with every terminal")


@pytest.fixture
def full_cut(request):
    return request.config.getoption("--full-cut")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one acceptance line; all lines are repeated in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def emit(number: int, status, text: str) -> None:
        if isinstance(status, bool):
            status = "PASS" if status else "FAIL"
        line = f"criterion {number:>2}: {status:<4}  {text}"
        lines.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
