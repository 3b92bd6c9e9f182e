import pytest

RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[RESULTS] = {}


@pytest.fixture
def acceptance(request):
    """Registry of acceptance outcomes: number -> (title, passed, seconds, limit)."""
    return request.config.stash[RESULTS]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, passed, seconds, limit = results[n]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {seconds:7.2f} s (limit {limit:g} s)  {title}")
