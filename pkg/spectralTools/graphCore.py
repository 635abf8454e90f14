"""
Exact representation of finite undirected regular multigraphs.

Graphs are immutable: the adjacency matrix is stored as a tuple of tuples of
integer multiplicities, adj[v][v] being the number of loops at v. A loop of
multiplicity m adds m (not 2m) to the row sum of v.
"""
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import (
    EmptySet,
    GraphFormatError,
    IndexOutOfRange,
    NotRegular,
    ZeroMultiplicity,
)


@dataclass(frozen=True)
class Multigraph:
    n: int
    adj: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError(f"vertex count must be >= 1, got {self.n}", op="Multigraph")
        if len(self.adj) != self.n or any(len(row) != self.n for row in self.adj):
            raise GraphFormatError("adjacency matrix must be n x n", op="Multigraph")
        for u in range(self.n):
            for v in range(u, self.n):
                if self.adj[u][v] < 0:
                    raise GraphFormatError(f"negative multiplicity at ({u}, {v})", op="Multigraph")
                if self.adj[u][v] != self.adj[v][u]:
                    raise GraphFormatError(f"adjacency not symmetric at ({u}, {v})", op="Multigraph")

    def matrix(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.int64)

    def row_sum(self, v: int) -> int:
        return sum(self.adj[v])

    def neighbors(self, v: int) -> List[int]:
        """Support neighbours of v, loops included."""
        return [u for u in range(self.n) if self.adj[v][u] > 0]

    def loop_units(self) -> int:
        return sum(self.adj[v][v] for v in range(self.n))


@dataclass(frozen=True)
class VertexSet:
    members: Tuple[int, ...]

    @classmethod
    def of(cls, vertices: Iterable[int], n: int = None) -> "VertexSet":
        members = tuple(sorted(set(int(v) for v in vertices)))
        if members and members[0] < 0:
            raise IndexOutOfRange(f"vertex {members[0]} is negative", op="VertexSet")
        if n is not None and members and members[-1] >= n:
            raise IndexOutOfRange(f"vertex {members[-1]} outside [0, {n})", op="VertexSet")
        return cls(members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def as_set(self) -> set:
        return set(self.members)

    def to_list(self) -> List[int]:
        return list(self.members)


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Multigraph:
    """
    Build a multigraph from (u, v, multiplicity) triples.

    Repeated pairs accumulate; (u, v) and (v, u) name the same edge; (v, v, m)
    adds m loops at v.
    """
    if n < 1:
        raise GraphFormatError(f"vertex count must be >= 1, got {n}", op="from_edge_list")
    adj = [[0] * n for _ in range(n)]
    for edge in edges:
        if len(edge) != 3:
            raise GraphFormatError(f"edge {edge!r} is not a (u, v, multiplicity) triple", op="from_edge_list")
        u, v, m = (int(x) for x in edge)
        for x in (u, v):
            if x < 0 or x >= n:
                raise IndexOutOfRange(f"vertex {x} outside [0, {n})", op="from_edge_list")
        if m == 0:
            raise ZeroMultiplicity(f"edge ({u}, {v}) has multiplicity 0", op="from_edge_list")
        if m < 0:
            raise GraphFormatError(f"edge ({u}, {v}) has negative multiplicity {m}", op="from_edge_list")
        adj[u][v] += m
        if u != v:
            adj[v][u] += m
    return Multigraph(n, tuple(tuple(row) for row in adj))


def from_matrix(matrix) -> Multigraph:
    rows = [[int(x) for x in row] for row in np.asarray(matrix).tolist()]
    return Multigraph(len(rows), tuple(tuple(row) for row in rows))


def to_edge_list(g: Multigraph) -> List[Tuple[int, int, int]]:
    """Edge triples with u <= v, loops as u = v, in row-major order."""
    return [
        (u, v, g.adj[u][v])
        for u in range(g.n)
        for v in range(u, g.n)
        if g.adj[u][v] > 0
    ]


def to_json(g: Multigraph) -> Dict:
    return {"n": g.n, "edges": [list(e) for e in to_edge_list(g)]}


def from_json(document: Dict) -> Multigraph:
    if not isinstance(document, dict) or "n" not in document or "edges" not in document:
        raise GraphFormatError('graph document needs "n" and "edges" keys', op="from_json")
    n = document["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError(f'"n" must be a non-negative integer, got {n!r}', op="from_json")
    if not isinstance(document["edges"], list):
        raise GraphFormatError(f'"edges" must be a list of triples, got {document["edges"]!r}', op="from_json")
    for edge in document["edges"]:
        if not isinstance(edge, (list, tuple)) or not all(isinstance(x, int) and not isinstance(x, bool) for x in edge):
            raise GraphFormatError(f"edge {edge!r} must be a list of three integers", op="from_json")
    return from_edge_list(n, document["edges"])


def dumps_graph(g: Multigraph) -> str:
    return json.dumps(to_json(g), separators=(", ", ": "))


def load_graph(path: str) -> Multigraph:
    with open(path, "r", encoding="utf-8") as handle:
        return from_json(json.load(handle))


def save_graph(g: Multigraph, path: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_graph(g) + "\n")


def relabel(g: Multigraph, sigma: Sequence[int]) -> Multigraph:
    """Graph whose vertex sigma[v] plays the role of v."""
    if sorted(sigma) != list(range(g.n)):
        raise GraphFormatError("relabeling must be a permutation of the vertices", op="relabel")
    adj = [[0] * g.n for _ in range(g.n)]
    for u in range(g.n):
        for v in range(g.n):
            adj[sigma[u]][sigma[v]] = g.adj[u][v]
    return Multigraph(g.n, tuple(tuple(row) for row in adj))


def validate_regular(g: Multigraph) -> int:
    """Return the common row sum d, or raise NotRegular naming two witnesses."""
    d = g.row_sum(0)
    for v in range(1, g.n):
        if g.row_sum(v) != d:
            raise NotRegular(
                f"vertex 0 has degree {d} but vertex {v} has degree {g.row_sum(v)}",
                op="validate_regular",
            )
    return d


def support_graph(g: Multigraph) -> nx.Graph:
    """Simple graph on 0..n-1 with an edge wherever adj > 0; loops stay as self-loops."""
    return nx.from_numpy_array((g.matrix() > 0).astype(np.int64))


def from_networkx(graph: nx.Graph) -> Multigraph:
    """Multiplicity matrix of a networkx (multi)graph, nodes in sorted order."""
    nodes = sorted(graph.nodes())
    if not nodes:
        raise GraphFormatError("graph has no vertices", op="from_networkx")
    return from_matrix(nx.to_numpy_array(graph, nodelist=nodes, weight=None, dtype=np.int64))


def is_connected(g: Multigraph) -> bool:
    return nx.is_connected(support_graph(g))


def is_bipartite(g: Multigraph) -> bool:
    """Proper 2-colouring of the support; any loop is an odd closed walk."""
    if any(g.adj[v][v] > 0 for v in range(g.n)):
        return False
    return nx.is_bipartite(support_graph(g))


def _as_vertex_set(g: Multigraph, s) -> VertexSet:
    if isinstance(s, VertexSet):
        for v in s.members:
            if v < 0 or v >= g.n:
                raise IndexOutOfRange(f"vertex {v} outside [0, {g.n})", op="neighborhood")
        return s
    return VertexSet.of(s, g.n)


def neighborhood(g: Multigraph, s) -> VertexSet:
    """N(S): every vertex adjacent to some member of S. May intersect S."""
    s = _as_vertex_set(g, s)
    if len(s) == 0:
        raise EmptySet("neighbourhood of the empty set is undefined", op="neighborhood")
    found = set()
    for v in s.members:
        found.update(g.neighbors(v))
    return VertexSet.of(found)


def exterior_boundary(g: Multigraph, s) -> VertexSet:
    """N(S) minus S, the strict exterior neighbourhood."""
    s = _as_vertex_set(g, s)
    inside = s.as_set()
    return VertexSet.of(v for v in neighborhood(g, s).members if v not in inside)


def edge_boundary(g: Multigraph, s) -> int:
    """Edges with multiplicity crossing from S to its complement."""
    s = _as_vertex_set(g, s)
    inside = s.as_set()
    return sum(g.adj[u][v] for u in inside for v in range(g.n) if v not in inside)


def is_independent(g: Multigraph, s) -> bool:
    """True iff no edge (loops included) joins two members of S."""
    s = _as_vertex_set(g, s)
    members = s.members
    return all(g.adj[u][v] == 0 for u in members for v in members)
