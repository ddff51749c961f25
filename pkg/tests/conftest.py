import pytest

from agshare import instances

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ex1_curve():
    return instances.example1_curve()


@pytest.fixture(scope="session")
def ex1_scheme():
    return instances.example1_scheme()


@pytest.fixture(scope="session")
def ex1_m6_scheme():
    return instances.example1_scheme(m=6)


@pytest.fixture(scope="session")
def herm_curve():
    return instances.hermitian_curve()


@pytest.fixture(scope="session")
def klein():
    return instances.klein_curve()
