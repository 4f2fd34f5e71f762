import pytest

from foxcover.cover import PunctureConfig, QuotientSpec

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def canonical4():
    return PunctureConfig.canonical(4)


@pytest.fixture(scope="session")
def canonical8():
    return PunctureConfig.canonical(8)


@pytest.fixture(scope="session")
def z2_6():
    return PunctureConfig.canonical(6), QuotientSpec.z2_power(6)
