import networkx as nx
import pytest
from hypothesis import strategies as st

from qwstationary import gen_complete, gen_counterexample, gen_cycle, gen_path, gen_star, gen_zero_overlap, load_graph


@pytest.fixture
def gstar():
    return gen_counterexample()


@pytest.fixture
def zero_overlap():
    return gen_zero_overlap()


def corpus():
    """Named (graph, marked) instances used across modules."""
    return {
        "gstar": gen_counterexample(),
        "zero_overlap": gen_zero_overlap(),
        "c6_pair": gen_cycle(6, 2),
        "c20_pair": gen_cycle(20, 2),
        "c4_single": gen_cycle(4, 1),
        "k4_triangle": gen_complete(4, 3),
        "k5_edge": gen_complete(5, 2),
        "star5": gen_star(5),
        "p4_middle": gen_path(4, [1, 2]),
        "petersen_edge": (load_graph(list(nx.petersen_graph().edges)), [0, 1]),
    }


@st.composite
def graph_with_marked(draw, max_n=8):
    """Connected random graph and a connected proper marked subset (labels 0..n-1)."""
    n = draw(st.integers(2, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    for u, v in extra:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    G = nx.Graph(sorted(edges))
    size = draw(st.integers(1, n - 1))
    seed = draw(st.integers(0, n - 1))
    marked = {seed}
    while len(marked) < size:
        frontier = sorted({w for v in marked for w in G.neighbors(v)} - marked)
        marked.add(draw(st.sampled_from(frontier)))
    return G, marked


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
