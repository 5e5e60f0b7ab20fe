import hypothesis.strategies as st
import pytest
from hypothesis import settings

from propb.hypergraph import Hypergraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def hypergraphs(draw, max_n=8, max_m=8, sizes=(2, 3, 4), min_m=0):
    """Random hypergraphs; duplicate edges allowed."""
    n = draw(st.integers(min(sizes), max_n))
    allowed = [j for j in sizes if j <= n]
    m = draw(st.integers(min_m, max_m))
    edges = []
    for _ in range(m):
        j = draw(st.sampled_from(allowed))
        edges.append(tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=j, max_size=j)))))
    return Hypergraph(n, tuple(edges))


@pytest.fixture
def path2():
    """f1 = {0,1}, e = {1,2}."""
    return Hypergraph(3, ((0, 1), (1, 2)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
