import pytest
from hypothesis import settings

from structctl.formats import load_topology

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ieee14():
    return load_topology("ieee14")


@pytest.fixture(scope="session")
def toy5():
    return load_topology("toy5")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
