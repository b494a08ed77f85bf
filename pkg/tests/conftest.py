import pytest
from hypothesis import HealthCheck, settings

from tnnspringer.coxeter import build_weyl

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def A1():
    return build_weyl("A", 1)


@pytest.fixture(scope="session")
def A2():
    return build_weyl("A", 2)


@pytest.fixture(scope="session")
def A3():
    return build_weyl("A", 3)


@pytest.fixture(scope="session")
def D4():
    return build_weyl("D", 4)



def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.RESULTS[number])
