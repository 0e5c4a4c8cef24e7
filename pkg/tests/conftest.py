import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from socialdrift.graph import build_graph, gen_random_graph, is_connected


def dense_adjacency(g):
    """Adjacency built from neighbor_sets, independent of the edge arrays."""
    a = np.zeros((g.n, g.n))
    for i, nbrs in enumerate(g.neighbor_sets):
        for j in nbrs:
            a[i, j] = 1.0
    return a


def dense_laplacian(g):
    a = dense_adjacency(g)
    return np.diag(a.sum(axis=1)) - a


def dense_inv_degree(g):
    k = dense_adjacency(g).sum(axis=1)
    return np.diag([1.0 / x if x > 0 else 0.0 for x in k])


def path3():
    return build_graph(3, [(0, 1), (1, 2)])


def star3():
    return build_graph(4, [(0, 1), (0, 2), (0, 3)])


def complete(n):
    return build_graph(n, itertools.combinations(range(n), 2))


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def random_regular(n, k, rng):
    """k-regular graph by pairing stubs, retried until simple."""
    while True:
        stubs = np.repeat(np.arange(n), k)
        rng.shuffle(stubs)
        pairs = {tuple(sorted(p)) for p in stubs.reshape(-1, 2).tolist()}
        if len(pairs) == n * k // 2 and all(u != v for u, v in pairs):
            return build_graph(n, pairs)


def random_connected(n, m, rng):
    while True:
        g = gen_random_graph(n, m, rng)
        if is_connected(g):
            return g


@st.composite
def graphs(draw, min_n=1, max_n=25):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


@st.composite
def graph_and_state(draw, min_n=1, max_n=25):
    g = draw(graphs(min_n, max_n))
    s = draw(
        st.lists(
            st.floats(-10, 10, allow_nan=False, allow_infinity=False),
            min_size=g.n,
            max_size=g.n,
        )
    )
    return g, np.array(s)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
