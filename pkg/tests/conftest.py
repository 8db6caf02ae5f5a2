import pytest

from rootlie.quiver import Quiver, d4_quiver, kronecker_quiver, linear_quiver


@pytest.fixture
def a1():
    return linear_quiver(1)


@pytest.fixture
def a2():
    return linear_quiver(2)


@pytest.fixture
def a3():
    return linear_quiver(3)


@pytest.fixture
def d4():
    return d4_quiver()


@pytest.fixture
def kron():
    return kronecker_quiver()


@pytest.fixture
def a3_two_sources():
    # 1 -> 2 <- 3
    return Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "3", "2")))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
