import pytest

from schublocus.roots import build_root_system

ACCEPTANCE = []


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def B2():
    return build_root_system("B2")


@pytest.fixture(scope="session")
def G2():
    return build_root_system("G2")


@pytest.fixture(scope="session")
def A3():
    return build_root_system("A3")


@pytest.fixture(scope="session")
def B3():
    return build_root_system("B3")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
