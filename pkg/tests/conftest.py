import pytest

from rsimple import directed, undirected

# Lines recorded by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES: list = []


@pytest.fixture(autouse=True)
def _fresh_caches():
    directed.clear_caches()
    undirected.clear_caches()
    yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
