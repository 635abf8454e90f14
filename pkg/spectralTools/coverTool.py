"""
Permutation covers of regular multigraphs.

A d-regular multigraph splits into d permutations theta_0 .. theta_{d-1} with
|{i : theta_i(u) = v}| = adj[u][v] for every ordered pair. Each permutation is
one perfect matching of the bipartite double (left copy of V, right copy of V,
adj[u][v] parallel units between u-left and v-right).
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from .cayleyGroups import Permutation
from .errors import MatchingFailure, NoIndex, NotAutomorphism, NotRegular, OutOfRange
from .graphCore import Multigraph, validate_regular
from .helper import debug_print
from .symmetryTool import inverse, is_automorphism, is_permutation


@dataclass(frozen=True)
class PermutationCover:
    thetas: Tuple[Permutation, ...]

    @property
    def d(self) -> int:
        return len(self.thetas)

    def to_list(self) -> List[List[int]]:
        return [list(theta) for theta in self.thetas]


@dataclass(frozen=True)
class FiberCensus:
    v: int
    j: int
    counts: Tuple[int, ...]
    subset_size: int

    @property
    def max_fiber(self) -> int:
        return max(self.counts) if self.counts else 0

    @property
    def pigeonhole_floor(self) -> int:
        return math.ceil(self.subset_size / len(self.counts)) if self.counts else 0

    def pigeonhole_holds(self) -> bool:
        return sum(self.counts) == self.subset_size and self.max_fiber >= self.pigeonhole_floor

    def to_dict(self) -> dict:
        return {"v": self.v, "j": self.j, "counts": list(self.counts), "subset_size": self.subset_size}


def _perfect_matching(residual: List[List[int]]) -> List[int]:
    """Hopcroft-Karp on the bipartite support of the residual; left vertex -> right vertex."""
    n = len(residual)
    left = [("L", u) for u in range(n)]
    double = nx.Graph()
    double.add_nodes_from(left, bipartite=0)
    double.add_nodes_from((("R", v) for v in range(n)), bipartite=1)
    double.add_edges_from(
        (("L", u), ("R", v)) for u in range(n) for v in range(n) if residual[u][v] > 0
    )
    matching = nx.bipartite.hopcroft_karp_matching(double, top_nodes=left)
    unmatched = [u for u, node in enumerate(left) if node not in matching]
    if unmatched:
        raise MatchingFailure(
            f"left vertex {unmatched[0]} is unmatched; residual is not regular", op="bvn_decompose"
        )
    return [matching[node][1] for node in left]


def bvn_decompose(g: Multigraph, d: Optional[int] = None) -> PermutationCover:
    """Split a d-regular multigraph into d permutations by repeated perfect matchings."""
    degree = validate_regular(g)
    if d is None:
        d = degree
    if d != degree:
        raise NotRegular(f"graph is {degree}-regular, not {d}-regular", op="bvn_decompose")
    residual = [list(row) for row in g.adj]
    thetas = []
    for _ in range(d):
        match = _perfect_matching(residual)
        for u, v in enumerate(match):
            residual[u][v] -= 1
        thetas.append(tuple(match))
    debug_print("Cover", f"bvn_decompose: n={g.n} d={d} permutations={len(thetas)}")
    return PermutationCover(tuple(thetas))


def cover_violation(g: Multigraph, cover: PermutationCover) -> Optional[str]:
    """First violated cover property, or None."""
    for i, theta in enumerate(cover.thetas):
        if not is_permutation(theta, g.n):
            return f"theta_{i} is not a permutation of [0, {g.n})"
        for v in range(g.n):
            if g.adj[v][theta[v]] < 1:
                return f"theta_{i} maps {v} to non-neighbour {theta[v]}"
    counts = [[0] * g.n for _ in range(g.n)]
    for theta in cover.thetas:
        for u in range(g.n):
            counts[u][theta[u]] += 1
    for u in range(g.n):
        for v in range(g.n):
            if counts[u][v] != g.adj[u][v]:
                return f"pair ({u}, {v}) covered {counts[u][v]} times, adjacency has {g.adj[u][v]}"
    return None


def verify_cover(g: Multigraph, cover: PermutationCover) -> bool:
    problem = cover_violation(g, cover)
    if problem:
        debug_print("Cover", f"verify_cover failed: {problem}")
    return problem is None


def _check_index(cover: PermutationCover, j: int, op: str):
    if not 0 <= j < cover.d:
        raise OutOfRange(f"theta index {j} outside [0, {cover.d})", op=op)


def _indices(cover: PermutationCover, aut_inv: Sequence[int], v: int, j: int) -> List[int]:
    source = aut_inv[v]
    target = aut_inv[cover.thetas[j][v]]
    return [i for i, theta in enumerate(cover.thetas) if theta[source] == target]


def quasi_auto_index(g: Multigraph, cover: PermutationCover, aut: Sequence[int], v: int, j: int) -> int:
    """Least i with theta_i(aut^-1(v)) = aut^-1(theta_j(v))."""
    _check_index(cover, j, "quasi_auto_index")
    if not is_automorphism(g, aut):
        raise NotAutomorphism(f"{list(aut)} is not an automorphism", op="quasi_auto_index")
    solutions = _indices(cover, inverse(tuple(aut)), v, j)
    if not solutions:
        raise NoIndex(f"no cover index solves the equation at v={v}, j={j}", op="quasi_auto_index")
    return solutions[0]


def fiber_census(g: Multigraph, cover: PermutationCover, subset: Sequence[Sequence[int]], v: int, j: int) -> FiberCensus:
    """Histogram of g -> i_{g,v,j} over the automorphisms in `subset`."""
    _check_index(cover, j, "fiber_census")
    counts = [0] * cover.d
    for aut in subset:
        if not is_automorphism(g, aut):
            raise NotAutomorphism(f"{list(aut)} is not an automorphism", op="fiber_census")
        solutions = _indices(cover, inverse(tuple(aut)), v, j)
        if not solutions:
            raise NoIndex(f"no cover index solves the equation at v={v}, j={j}", op="fiber_census")
        counts[solutions[0]] += 1
    return FiberCensus(v, j, tuple(counts), len(subset))


def largest_fiber(g: Multigraph, cover: PermutationCover, subset: Sequence[Sequence[int]], census: FiberCensus) -> Tuple[int, List[Permutation]]:
    """Index i of a maximal fibre (least on ties) and its members."""
    i = census.counts.index(census.max_fiber)
    members = [
        tuple(aut) for aut in subset
        if quasi_auto_index(g, cover, aut, census.v, census.j) == i
    ]
    return i, members


def relabel_cover(cover: PermutationCover, sigma: Sequence[int]) -> PermutationCover:
    """sigma o theta_i o sigma^-1 for every i."""
    sigma_inv = inverse(tuple(sigma))
    return PermutationCover(tuple(
        tuple(sigma[theta[sigma_inv[x]]] for x in range(len(sigma)))
        for theta in cover.thetas
    ))
