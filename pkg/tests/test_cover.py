import numpy as np
import pytest

from corpus_builder import circulant
from spectralTools.coverTool import (
    PermutationCover,
    _perfect_matching,
    bvn_decompose,
    fiber_census,
    largest_fiber,
    quasi_auto_index,
    relabel_cover,
    verify_cover,
)
from spectralTools.errors import MatchingFailure, NoIndex, NotAutomorphism, OutOfRange
from spectralTools.graphCore import from_edge_list, from_matrix, relabel
from spectralTools.symmetryTool import automorphism_group, inverse


def random_regular_multigraph(rng, n, d):
    """Sum of (P + P^T) blocks plus one involution when d is odd; loops and parallel edges appear freely."""
    a = np.zeros((n, n), dtype=np.int64)
    for _ in range(d // 2):
        p = np.eye(n, dtype=np.int64)[rng.permutation(n)]
        a += p + p.T
    if d % 2:
        order = rng.permutation(n)
        involution = list(range(n))
        for k in range(0, n - 1, 2):
            if rng.random() < 0.7:
                x, y = order[k], order[k + 1]
                involution[x], involution[y] = y, x
        a += np.eye(n, dtype=np.int64)[involution]
    return from_matrix(a)


def test_c5_cover(c5):
    cover = bvn_decompose(c5)
    assert cover.d == 2
    assert verify_cover(c5, cover)


def test_cover_of_looped_multigraph():
    g = from_edge_list(3, [(0, 0, 1), (1, 1, 1), (2, 2, 2), (0, 1, 2), (1, 2, 1), (0, 2, 1)])
    cover = bvn_decompose(g)
    assert cover.d == 4
    assert verify_cover(g, cover)


def test_random_regular_multigraphs():
    rng = np.random.default_rng(20240517)
    for _ in range(200):
        n = int(rng.integers(1, 13))
        d = int(rng.integers(1, 7))
        g = random_regular_multigraph(rng, n, d)
        cover = bvn_decompose(g)
        assert cover.d == d
        assert verify_cover(g, cover)


def test_tampered_cover_is_rejected(c5):
    cover = bvn_decompose(c5)
    broken = PermutationCover((cover.thetas[0], cover.thetas[0]))
    assert not verify_cover(c5, broken)
    assert not verify_cover(c5, PermutationCover(((0, 1, 2, 3, 4), cover.thetas[1])))


def test_matching_failure_is_raised():
    with pytest.raises(MatchingFailure):
        _perfect_matching([[1, 0], [1, 0]])


def test_decomposition_is_deterministic(petersen_graph):
    first = bvn_decompose(petersen_graph)
    assert bvn_decompose(petersen_graph) == first
    assert verify_cover(petersen_graph, first)


@pytest.mark.parametrize("name", ["c5", "c7", "k4", "petersen_graph"])
def test_quasi_auto_index_is_total(name, request):
    g = request.getfixturevalue(name)
    cover = bvn_decompose(g)
    G = automorphism_group(g)
    for aut in G.elements:
        aut_inv = inverse(aut)
        for v in range(g.n):
            for j in range(cover.d):
                i = quasi_auto_index(g, cover, aut, v, j)
                assert cover.thetas[i][aut_inv[v]] == aut_inv[cover.thetas[j][v]]


@pytest.mark.parametrize("name", ["c5", "c7", "k4", "petersen_graph"])
def test_fiber_pigeonhole(name, request):
    g = request.getfixturevalue(name)
    cover = bvn_decompose(g)
    G = automorphism_group(g)
    for v in range(g.n):
        for j in range(cover.d):
            census = fiber_census(g, cover, G.elements, v, j)
            assert sum(census.counts) == G.order
            assert census.pigeonhole_holds()


def test_largest_fiber_members(petersen_graph):
    cover = bvn_decompose(petersen_graph)
    G = automorphism_group(petersen_graph)
    census = fiber_census(petersen_graph, cover, G.elements, 0, 1)
    i, members = largest_fiber(petersen_graph, cover, G.elements, census)
    assert len(members) == census.max_fiber >= 40
    assert census.counts[i] == census.max_fiber


def test_quasi_auto_index_errors(c5):
    cover = bvn_decompose(c5)
    with pytest.raises(NotAutomorphism):
        quasi_auto_index(c5, cover, (1, 0, 2, 3, 4), 0, 0)
    with pytest.raises(OutOfRange):
        quasi_auto_index(c5, cover, (0, 1, 2, 3, 4), 0, 2)
    rotation_only = PermutationCover(((1, 2, 3, 4, 0),))
    reflection = (0, 4, 3, 2, 1)
    with pytest.raises(NoIndex):
        quasi_auto_index(c5, rotation_only, reflection, 0, 0)


def test_relabeled_cover_covers_relabeled_graph():
    g = circulant(7, [1, 2])
    cover = bvn_decompose(g)
    sigma = [4, 0, 6, 2, 5, 1, 3]
    assert verify_cover(relabel(g, sigma), relabel_cover(cover, sigma))
