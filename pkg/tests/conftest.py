import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from indap.sieve import build_sieve  # noqa: E402

_CRITERIA: list[tuple[int, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        _CRITERIA.append((marker.args[0], marker.args[1], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, verdict in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {number:>2} {verdict}  {title}")


@pytest.fixture(scope="session")
def table():
    return build_sieve(20_000)
