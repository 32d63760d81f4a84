import numpy as np
import pytest
from hypothesis import strategies as st

from minmapcc import Graph


@st.composite
def small_graphs(draw, max_n=24, max_edges=48):
    """Random small graphs, self-loops and duplicate edges allowed."""
    n = draw(st.integers(min_value=0, max_value=max_n))
    if n == 0:
        return Graph.from_edges(0, np.zeros((0, 2), dtype=np.int64))
    m = draw(st.integers(min_value=0, max_value=max_edges))
    pairs = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        min_size=m, max_size=m,
    ))
    return Graph.from_edges(n, np.asarray(pairs, dtype=np.int64).reshape(m, 2))


@st.composite
def parent_forests(draw, max_n=24):
    """Label arrays with labels[v] <= v: acyclic apart from root self-loops."""
    n = draw(st.integers(min_value=0, max_value=max_n))
    values = [draw(st.integers(0, v)) for v in range(n)]
    return np.asarray(values, dtype=np.int64)


@pytest.fixture(scope="session")
def two_components():
    return Graph.from_edges(4, [(0, 1), (2, 3)])
