"""
Permutation groups acting on graph vertices.

Groups are stored with every element enumerated (lexicographic order of image
arrays); the orbit and fibre computations downstream need the full element
lists, not just generators.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .cayleyGroups import CayleyGroup, Permutation, parse_group_spec
from .errors import (
    GroupSpecError,
    InconsistentOrder,
    NotSymmetricSet,
    NotTransitive,
    TooLarge,
)
from .graphCore import Multigraph, VertexSet, neighborhood
from .helper import AUT_ORDER_CAP, BUDGET_AUT, BUDGET_GROUP, debug_print


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p o q: apply q first, then p."""
    return tuple(p[x] for x in q)


def inverse(p: Permutation) -> Permutation:
    result = [0] * len(p)
    for i, x in enumerate(p):
        result[x] = i
    return tuple(result)


def is_permutation(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def is_automorphism(g: Multigraph, sigma: Sequence[int]) -> bool:
    """A[sigma(u)][sigma(v)] == A[u][v] for all u, v."""
    if not is_permutation(sigma, g.n):
        return False
    return all(
        g.adj[sigma[u]][sigma[v]] == g.adj[u][v]
        for u in range(g.n)
        for v in range(u, g.n)
    )


@dataclass(frozen=True)
class PermGroup:
    n: int
    elements: Tuple[Permutation, ...]
    generators: Tuple[Permutation, ...]
    _members: FrozenSet[Permutation] = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return tuple(p) in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def validate(self, exhaustive: bool = False) -> bool:
        """Identity, inverses and closure (under generators, or all pairs)."""
        if len(self._members) != len(self.elements):
            return False
        if identity(self.n) not in self._members:
            return False
        if any(not is_permutation(p, self.n) for p in self.elements):
            return False
        if any(inverse(p) not in self._members for p in self.elements):
            return False
        if any(s not in self._members for s in self.generators):
            return False
        right = self.elements if exhaustive else self.generators
        return all(compose(p, q) in self._members for p in self.elements for q in right)

    def to_dict(self) -> dict:
        return {"order": self.order, "generators": [list(s) for s in self.generators]}


def _closure(n: int, generators: Iterable[Permutation], cap: Optional[int] = None, seed: Iterable[Permutation] = ()) -> set:
    gens = list(generators)
    members = set(seed) | {identity(n)}
    frontier = list(members)
    while frontier:
        fresh = []
        for p in frontier:
            for s in gens:
                q = compose(s, p)
                if q not in members:
                    members.add(q)
                    fresh.append(q)
                    if cap is not None and len(members) > cap:
                        raise TooLarge(f"group exceeds {cap} elements", op="generate_group")
        frontier = fresh
    return members


def _greedy_generators(n: int, elements: Sequence[Permutation]) -> Tuple[Permutation, ...]:
    """Scan elements in order, keeping each one not yet generated."""
    gens: List[Permutation] = []
    span = {identity(n)}
    for p in elements:
        if p not in span:
            gens.append(p)
            span = _closure(n, gens, seed=span)
    return tuple(gens)


def make_group(n: int, elements: Iterable[Permutation], generators: Optional[Sequence[Permutation]] = None) -> PermGroup:
    ordered = tuple(sorted(set(tuple(p) for p in elements)))
    if generators is None:
        generators = _greedy_generators(n, ordered)
    return PermGroup(n, ordered, tuple(tuple(s) for s in generators))


def generate_group(n: int, generators: Iterable[Sequence[int]], cap: int = AUT_ORDER_CAP) -> PermGroup:
    gens = [tuple(s) for s in generators]
    for s in gens:
        if not is_permutation(s, n):
            raise GroupSpecError(f"{list(s)} is not a permutation of [0, {n})", op="generate_group")
    return make_group(n, _closure(n, gens, cap), gens)


def _search_order(g: Multigraph) -> Tuple[List[int], List[Optional[int]]]:
    """BFS order over the support, with the BFS parent of each vertex."""
    order, parent = [], [None] * g.n
    seen = [False] * g.n
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    queue.append(u)
    return order, parent


def automorphism_group(g: Multigraph, budget: int = BUDGET_AUT, order_cap: int = AUT_ORDER_CAP) -> PermGroup:
    """
    Full automorphism group by backtracking over vertex images.

    Vertices are assigned in BFS order; a candidate image must agree with every
    earlier assignment on adjacency multiplicities (partial-row consistency),
    and a vertex with a BFS parent may only map into the neighbourhood of its
    parent's image.
    """
    if g.n > budget:
        raise TooLarge(f"n = {g.n} exceeds the automorphism budget {budget}", op="automorphism_group")
    n = g.n
    adj = g.adj
    order, parent = _search_order(g)
    sigma = [-1] * n
    used = [False] * n
    found: List[Permutation] = []

    def extend(position: int):
        if position == n:
            found.append(tuple(sigma))
            if len(found) > order_cap:
                raise TooLarge(f"automorphism group exceeds {order_cap} elements", op="automorphism_group")
            return
        x = order[position]
        if parent[x] is not None:
            candidates = g.neighbors(sigma[parent[x]])
        else:
            candidates = range(n)
        for c in candidates:
            if used[c] or adj[c][c] != adj[x][x]:
                continue
            if any(adj[sigma[y]][c] != adj[y][x] for y in order[:position]):
                continue
            sigma[x] = c
            used[c] = True
            extend(position + 1)
            used[c] = False
            sigma[x] = -1

    extend(0)
    group = make_group(n, found)
    debug_print("Symmetry", f"automorphism_group: n={n} order={group.order} generators={len(group.generators)}")
    return group


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller label wins so orbit representatives are minima
            if y < x:
                x, y = y, x
            self.parent[y] = x


def orbits(G: PermGroup, points: Optional[Iterable[int]] = None) -> List[VertexSet]:
    """Orbit partition, sorted by least member."""
    space = list(range(G.n)) if points is None else sorted(points)
    uf = UnionFind(range(G.n))
    for s in (G.generators or G.elements):
        for x in range(G.n):
            uf.union(x, s[x])
    groups: Dict[int, List[int]] = {}
    for x in space:
        groups.setdefault(uf.find(x), []).append(x)
    return sorted((VertexSet.of(members) for members in groups.values()), key=lambda s: s.members[0])


def is_vertex_transitive(G: PermGroup) -> Tuple[bool, List[VertexSet]]:
    parts = orbits(G)
    return len(parts) == 1, parts


def transitivity_order(G: PermGroup) -> int:
    """t such that every equation g.u = v has exactly t solutions."""
    transitive, _ = is_vertex_transitive(G)
    if not transitive:
        raise NotTransitive("group action has more than one orbit", op="transitivity_order")
    if G.order % G.n != 0:
        raise InconsistentOrder(f"|G| = {G.order} is not divisible by n = {G.n}", op="transitivity_order")
    t = G.order // G.n
    counts = [[0] * G.n for _ in range(G.n)]
    for p in G.elements:
        for u in range(G.n):
            counts[u][p[u]] += 1
    for u in range(G.n):
        for v in range(G.n):
            if counts[u][v] != t:
                raise InconsistentOrder(
                    f"g.{u} = {v} has {counts[u][v]} solutions, expected {t}", op="transitivity_order"
                )
    return t


def condition2_holds(G: PermGroup) -> bool:
    """The action is transitive of some order t."""
    try:
        transitivity_order(G)
    except NotTransitive:
        return False
    return True


def _squares_subgroup(G: PermGroup) -> set:
    """Subgroup generated by all squares and the commutators of generators."""
    span = {identity(G.n)}
    gens: List[Permutation] = []

    def absorb(p: Permutation):
        nonlocal span
        if p not in span:
            gens.append(p)
            span = _closure(G.n, gens, seed=span)

    for p in G.elements:
        absorb(compose(p, p))
    for a in G.generators:
        for b in G.generators:
            absorb(compose(compose(a, b), compose(inverse(a), inverse(b))))
    return span


def index_two_subgroups(G: PermGroup, budget: int = BUDGET_GROUP) -> List[PermGroup]:
    """
    Every subgroup of index 2.

    Each one contains K = <squares, commutators>, and G/K is elementary abelian
    of exponent 2, so the index-two subgroups are the kernels of the nonzero
    linear functionals on G/K over GF(2).
    """
    if G.order > budget:
        raise TooLarge(f"|G| = {G.order} exceeds the group budget {budget}", op="index_two_subgroups")
    kernel = sorted(_squares_subgroup(G))
    if len(kernel) == G.order:
        return []

    coset_of: Dict[Permutation, int] = {}
    reps: List[Permutation] = []
    for p in G.elements:
        if p in coset_of:
            continue
        reps.append(p)
        for k in kernel:
            coset_of[compose(p, k)] = len(reps) - 1

    # coordinates of each coset in G/K = GF(2)^rank
    vector = {coset_of[identity(G.n)]: 0}
    rank = 0
    for p in G.elements:
        if coset_of[p] in vector:
            continue
        bit = 1 << rank
        rank += 1
        for coset, value in list(vector.items()):
            vector[coset_of[compose(reps[coset], p)]] = value ^ bit

    subgroups = []
    for functional in range(1, 1 << rank):
        members = [p for p in G.elements if bin(vector[coset_of[p]] & functional).count("1") % 2 == 0]
        subgroups.append(make_group(G.n, members))
    debug_print("Symmetry", f"index_two_subgroups: |G|={G.order} |K|={len(kernel)} count={len(subgroups)}")
    return subgroups


def condition1_holds(G: PermGroup, budget: int = BUDGET_GROUP) -> bool:
    """No index-two subgroup of G is transitive."""
    if not is_vertex_transitive(G)[0]:
        raise NotTransitive("condition (1) is only defined for transitive groups", op="condition1_holds")
    return not any(is_vertex_transitive(H)[0] for H in index_two_subgroups(G, budget))


def descend_to_condition1(G: PermGroup, budget: int = BUDGET_GROUP) -> PermGroup:
    """Replace G by its first transitive index-two subgroup until none is left."""
    if not is_vertex_transitive(G)[0]:
        raise NotTransitive("descent needs a transitive starting group", op="descend_to_condition1")
    current = G
    while True:
        transitive_halves = [H for H in index_two_subgroups(current, budget) if is_vertex_transitive(H)[0]]
        if not transitive_halves:
            return current
        debug_print("Symmetry", f"descend: {current.order} -> {transitive_halves[0].order}")
        current = transitive_halves[0]


def condition4_check(G: PermGroup, g: Multigraph) -> bool:
    """N(N(tau(A))) is contained in tau(N(N(A))) for every tau and singleton A."""
    second = [neighborhood(g, neighborhood(g, [v])).as_set() for v in range(g.n)]
    for tau in G.elements:
        for v in range(g.n):
            image = {tau[x] for x in second[v]}
            if not second[tau[v]] <= image:
                debug_print("Symmetry", f"condition (4) fails for tau={list(tau)} at v={v}")
                return False
    return True


def cayley_graph(group: Union[str, CayleyGroup], connection: Union[str, Sequence]) -> Multigraph:
    """
    Cayley multigraph on the group's elements (lexicographic numbering) with
    adj[x][y] = multiplicity of y.x^-1 in the connection multiset.
    """
    if isinstance(group, str):
        group = parse_group_spec(group)
    if isinstance(connection, str):
        elements = group.parse_connection(connection)
    else:
        elements = [group.parse_element(s) if isinstance(s, str) else tuple(s) for s in connection]
        for s in elements:
            if s not in set(group.elements):
                raise GroupSpecError(f"{list(s)} is not an element of {group.spec}", op="cayley_graph")
    multiset = Counter(elements)
    if multiset != Counter(inverse(s) for s in elements):
        raise NotSymmetricSet(f"connection set of {group.spec} is not closed under inversion", op="cayley_graph")

    size = group.order
    adj = [[0] * size for _ in range(size)]
    for i, x in enumerate(group.elements):
        x_inv = inverse(x)
        for j, y in enumerate(group.elements):
            adj[i][j] = multiset.get(compose(y, x_inv), 0)
    return Multigraph(size, tuple(tuple(row) for row in adj))


def translation_group(group: Union[str, CayleyGroup]) -> PermGroup:
    """Right translations x -> x.s acting on element indices; automorphisms of every Cayley graph of the group."""
    if isinstance(group, str):
        group = parse_group_spec(group)
    index = group.index()
    translations = [tuple(index[compose(x, s)] for x in group.elements) for s in group.elements]
    return make_group(group.order, translations)
