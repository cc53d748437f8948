import pytest

from csystems import dsl, fixtures
from csystems.model import Model


@pytest.fixture(scope="session")
def fs2_u3():
    return fixtures.fs2_u3()


@pytest.fixture(scope="session")
def cc3():
    return fixtures.cc_fs2_u3(3)


@pytest.fixture(scope="session")
def inc():
    return fixtures.inc()


@pytest.fixture(scope="session")
def inc_twisted():
    return fixtures.inc(twist=True)


def load(name):
    return dsl.parse(fixtures.fixture_text(name))


@pytest.fixture(scope="session")
def finset_model():
    return Model(load("finset_u3.spec"))


@pytest.fixture(scope="session")
def inc_model():
    return Model(load("inc.spec"))


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
