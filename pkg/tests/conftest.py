import pytest

from thetagraph.graph import MetricGraph

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def make_b3(a=2, b=2, c=2):
    return MetricGraph(["u", "v"], [("e1", "u", "v", a), ("e2", "u", "v", b), ("e3", "u", "v", c)])


def make_k4(length=1):
    vs = ["a", "b", "c", "d"]
    edges = [(x + y, x, y, length) for i, x in enumerate(vs) for y in vs[i + 1:]]
    return MetricGraph(vs, edges)


def make_dumbbell(bridge=1):
    """Two loops joined by a bridge."""
    return MetricGraph(["x", "y"], [("l1", "x", "x", 2), ("br", "x", "y", bridge), ("l2", "y", "y", 3)])


@pytest.fixture
def b3():
    return make_b3()


@pytest.fixture
def k4():
    return make_k4()


@pytest.fixture
def dumbbell():
    return make_dumbbell()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
