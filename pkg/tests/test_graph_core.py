import itertools
import json

import networkx as nx
import pytest

from spectralTools.errors import (
    EmptySet,
    GraphFormatError,
    IndexOutOfRange,
    NotRegular,
    ZeroMultiplicity,
)
from spectralTools.graphCore import (
    VertexSet,
    dumps_graph,
    edge_boundary,
    exterior_boundary,
    from_edge_list,
    from_json,
    from_matrix,
    from_networkx,
    is_bipartite,
    is_connected,
    is_independent,
    load_graph,
    neighborhood,
    relabel,
    save_graph,
    to_edge_list,
    validate_regular,
)


def test_edge_list_accumulates_and_symmetrizes():
    g = from_edge_list(3, [(0, 1, 1), (1, 0, 2), (2, 2, 3)])
    assert g.adj[0][1] == 3 and g.adj[1][0] == 3
    assert g.adj[2][2] == 3
    assert g.row_sum(2) == 3


def test_loop_counts_once_in_row_sum():
    g = from_edge_list(2, [(0, 0, 1), (1, 1, 1), (0, 1, 2)])
    assert validate_regular(g) == 3


def test_edge_list_errors():
    with pytest.raises(IndexOutOfRange):
        from_edge_list(3, [(0, 3, 1)])
    with pytest.raises(ZeroMultiplicity):
        from_edge_list(3, [(0, 1, 0)])
    with pytest.raises(GraphFormatError):
        from_edge_list(3, [(0, 1, -1)])
    with pytest.raises(GraphFormatError):
        from_edge_list(3, [(0, 1)])


def test_index_error_is_also_builtin_index_error():
    with pytest.raises(IndexError):
        from_edge_list(2, [(0, 5, 1)])


def test_to_edge_list_is_upper_triangular(c5):
    edges = to_edge_list(c5)
    assert all(u <= v for u, v, _ in edges)
    assert len(edges) == 5
    assert from_edge_list(5, edges) == c5


def test_json_document_and_file(tmp_path, c5):
    document = json.loads(dumps_graph(c5))
    assert document["n"] == 5
    assert from_json(document) == c5
    path = tmp_path / "c5.json"
    save_graph(c5, str(path))
    assert load_graph(str(path)) == c5


def test_from_json_rejects_bad_documents():
    with pytest.raises(GraphFormatError):
        from_json({"edges": []})
    with pytest.raises(GraphFormatError):
        from_json({"n": "5", "edges": []})
    with pytest.raises(GraphFormatError):
        from_json({"n": 2, "edges": [[0, 1, 1.5]]})


def test_from_matrix_requires_symmetry():
    with pytest.raises(GraphFormatError):
        from_matrix([[0, 1], [0, 0]])


def test_validate_regular_names_both_vertices(path3):
    with pytest.raises(NotRegular) as info:
        validate_regular(path3)
    assert "vertex 0" in str(info.value) and "vertex 1" in str(info.value)
    assert info.value.op == "validate_regular"


def test_neighborhood_is_inclusive(c5):
    assert neighborhood(c5, [0]).to_list() == [1, 4]
    assert neighborhood(c5, [0, 1]).to_list() == [0, 1, 2, 4]
    assert exterior_boundary(c5, [0, 1]).to_list() == [2, 4]
    assert edge_boundary(c5, [0, 1]) == 2


def test_neighborhood_of_empty_set(c5):
    with pytest.raises(EmptySet):
        neighborhood(c5, [])


def test_vertex_set_checks_range():
    assert VertexSet.of([3, 1, 3]).to_list() == [1, 3]
    with pytest.raises(IndexOutOfRange):
        VertexSet.of([0, 5], n=5)


def test_bipartite_and_connected(c4, c5, two_triangles):
    assert is_bipartite(c4)
    assert not is_bipartite(c5)
    assert not is_bipartite(from_edge_list(2, [(0, 0, 1), (1, 1, 1), (0, 1, 1)]))
    assert is_connected(c5)
    assert not is_connected(two_triangles)


def test_independent_sets(c4, c5):
    assert is_independent(c4, [0, 2])
    assert not is_independent(c5, [0, 1])
    assert is_independent(c5, [])
    looped = from_edge_list(2, [(0, 0, 1), (1, 1, 1), (0, 1, 1)])
    assert not is_independent(looped, [0])


def test_relabel_preserves_adjacency(petersen_graph):
    sigma = [3, 7, 0, 9, 1, 5, 2, 8, 4, 6]
    h = relabel(petersen_graph, sigma)
    for u in range(10):
        for v in range(10):
            assert h.adj[sigma[u]][sigma[v]] == petersen_graph.adj[u][v]
    with pytest.raises(GraphFormatError):
        relabel(petersen_graph, [0] * 10)


@pytest.mark.parametrize(
    "document",
    [
        {"n": 3, "edges": 5},
        {"n": 3, "edges": {"0": [0, 1, 1]}},
        {"n": -1, "edges": []},
        {"n": True, "edges": []},
    ],
)
def test_from_json_checks_field_types(document):
    with pytest.raises(GraphFormatError) as info:
        from_json(document)
    assert info.value.op == "from_json"


def test_neighborhood_is_monotone(c6, petersen_graph):
    looped = from_edge_list(4, [(0, 0, 1), (0, 1, 2), (1, 2, 1), (2, 3, 2), (3, 3, 1)])
    for g in (c6, looped):
        vertices = range(g.n)
        for size in range(1, g.n + 1):
            for t in itertools.combinations(vertices, size):
                big = neighborhood(g, t).as_set()
                for k in range(1, size + 1):
                    for s in itertools.combinations(t, k):
                        assert neighborhood(g, s).as_set() <= big
    assert neighborhood(petersen_graph, [0]).as_set() <= neighborhood(petersen_graph, [0, 7]).as_set()


def test_validate_regular_is_relabeling_invariant(petersen_graph, path3):
    sigma = [3, 7, 0, 9, 1, 5, 2, 8, 4, 6]
    assert validate_regular(relabel(petersen_graph, sigma)) == validate_regular(petersen_graph) == 3
    looped = from_edge_list(3, [(0, 0, 2), (1, 2, 2), (0, 1, 1), (0, 2, 1), (1, 1, 1), (2, 2, 1)])
    for sigma in itertools.permutations(range(3)):
        assert validate_regular(relabel(looped, sigma)) == validate_regular(looped)
        with pytest.raises(NotRegular):
            validate_regular(relabel(path3, sigma))


def test_from_networkx_counts_parallel_edges():
    multi = nx.MultiGraph()
    multi.add_edges_from([(0, 1), (0, 1), (1, 2), (2, 0)])
    g = from_networkx(multi)
    assert g.adj[0][1] == 2 and g.adj[1][2] == 1
    assert from_networkx(nx.cycle_graph(5)) == from_edge_list(5, [(i, (i + 1) % 5, 1) for i in range(5)])
    assert is_connected(from_edge_list(1, []))
