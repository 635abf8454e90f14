import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from corpus_builder import circulant, complete_bipartite, complete_graph, petersen  # noqa: E402
from spectralTools.graphCore import from_edge_list  # noqa: E402


@pytest.fixture
def c4():
    return circulant(4, [1])


@pytest.fixture
def c5():
    return circulant(5, [1])


@pytest.fixture
def c6():
    return circulant(6, [1])


@pytest.fixture
def c7():
    return circulant(7, [1])


@pytest.fixture
def c9():
    return circulant(9, [1])


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def petersen_graph():
    return petersen()


@pytest.fixture
def two_triangles():
    return from_edge_list(6, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)])


@pytest.fixture
def path3():
    return from_edge_list(3, [(0, 1, 1), (1, 2, 1)])
