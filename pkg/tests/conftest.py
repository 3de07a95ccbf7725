import pytest
from hypothesis import strategies as st

from backforth import kernels
from backforth.construction import GraphParams, quotient_dv, truncation
from backforth.graphcore import EdgeRef, MultiDigraph, Vertex

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture(params=kernels.available())
def backend(request):
    previous = kernels.use(request.param)
    yield request.param
    kernels.use(previous)


@pytest.fixture
def k2():
    return GraphParams(2)


@pytest.fixture
def k3():
    return GraphParams(3)


@pytest.fixture
def d1(k2):
    return truncation(k2, 1)


@pytest.fixture
def d2(k2):
    return truncation(k2, 2)


@pytest.fixture
def dv2(k2):
    return quotient_dv(k2)


@st.composite
def small_multigraphs(draw, max_vertices=6, max_edges=25):
    """Random multidigraphs on vertices s_0.. with EdgeRefs numbered by rule."""
    n = draw(st.integers(2, max_vertices))
    verts = [Vertex("s", (i,)) for i in range(n)]
    pairs = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]),
        max_size=max_edges,
    ))
    edges = [(EdgeRef((), r, 0), verts[a], verts[b]) for r, (a, b) in enumerate(pairs)]
    return MultiDigraph(verts, edges)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
