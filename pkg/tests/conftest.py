import pytest
from hypothesis import HealthCheck, settings

from lvrough.lattice import make_boolean, make_goedel_chain, make_lukasiewicz_chain
from lvrough.universe import Universe

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture(scope="session")
def luk2():
    return make_lukasiewicz_chain(2)


@pytest.fixture(scope="session")
def goedel2():
    return make_goedel_chain(2)


@pytest.fixture(scope="session")
def boolean():
    return make_boolean()


@pytest.fixture(scope="session")
def luk2x2(luk2):
    return Universe.constant(luk2, ["a", "b"])


@pytest.fixture(scope="session")
def goedel2x2(goedel2):
    return Universe.from_labels(goedel2, {"a": "1", "b": "1/2"})


@pytest.fixture(scope="session")
def bool2x(boolean):
    return Universe.constant(boolean, ["a", "b"])


# acceptance lines are collected here and printed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
