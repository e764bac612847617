import itertools

import pytest

from graphforge.graph import Graph


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def disjoint_cliques(*sizes: int) -> Graph:
    edges = []
    start = 0
    for s in sizes:
        nodes = range(start, start + s)
        edges.extend(itertools.combinations(nodes, 2))
        start += s
    return Graph.from_edges(start, edges)


@pytest.fixture
def two_k4() -> Graph:
    return disjoint_cliques(4, 4)
