"""
Exact isoperimetric constants by exhaustive subset search.

Subsets are enumerated as bitmasks. The low LOW_BITS vertices are enumerated
as one numpy block (indicator matrix), the remaining high vertices are fixed
per block, so a block is one "top bits" partition of the search. Cut sizes and
boundaries are exact integers; the optimum ratio is an exact Fraction.
"""
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import Disconnected, TooLarge
from .graphCore import Multigraph, VertexSet, edge_boundary, exterior_boundary, is_connected
from .helper import BUDGET_SUBSETS, SANDWICH_SLACK, debug_print, fraction_str, format_real
from .spectrumTool import SpectralSummary

LOW_BITS = 16


@dataclass(frozen=True)
class ExpansionProfile:
    h_edge: Fraction
    h_vertex: Fraction
    witness_edge: VertexSet
    witness_vertex: VertexSet

    def to_dict(self) -> dict:
        return {
            "h_edge": fraction_str(self.h_edge),
            "h_edge_decimal": float(format_real(float(self.h_edge))),
            "h_vertex": fraction_str(self.h_vertex),
            "h_vertex_decimal": float(format_real(float(self.h_vertex))),
            "witness_edge": self.witness_edge.to_list(),
            "witness_vertex": self.witness_vertex.to_list(),
        }


class _Search:
    """Running exact minimum with lexicographic tie-break on sorted witnesses."""

    def __init__(self):
        self.best: Optional[Fraction] = None
        self.witness: Optional[Tuple[int, ...]] = None

    def offer(self, value: Fraction, witness: Tuple[int, ...]):
        if self.best is None or value < self.best or (value == self.best and witness < self.witness):
            self.best = value
            self.witness = witness


def _members(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(i for i in range(n) if (mask >> i) & 1)


def _bit_matrix(count: int) -> np.ndarray:
    """Row k is the 0/1 indicator of the bits of k, least significant first."""
    masks = np.arange(1 << count, dtype=np.int64)
    return ((masks[:, None] >> np.arange(count, dtype=np.int64)) & 1).astype(np.int32)


def _check_searchable(g: Multigraph, budget: int, op: str):
    if g.n > budget:
        raise TooLarge(f"n = {g.n} exceeds the exhaustive-search budget {budget}", op=op)
    if not is_connected(g):
        raise Disconnected("isoperimetric constants need a connected graph", op=op)


def _exhaustive_minimum(g: Multigraph, objective: Callable, op: str, workers_blocks: Optional[List[int]] = None):
    """
    Minimize objective(block) / |S| over 1 <= |S| <= n // 2.

    objective(low_bits, x_high) returns the integer numerator for every row
    of the low block combined with the fixed high bits.
    """
    n = g.n
    low = min(n, LOW_BITS)
    high = n - low
    cap = n // 2
    low_bits = _bit_matrix(low)
    low_sizes = low_bits.sum(axis=1)
    search = _Search()

    prefixes = range(1 << high) if workers_blocks is None else workers_blocks
    for prefix in prefixes:
        x_high = np.array([(prefix >> k) & 1 for k in range(high)], dtype=np.int32)
        sizes = low_sizes + int(x_high.sum())
        valid = (sizes >= 1) & (sizes <= cap)
        if not valid.any():
            continue
        numerators = objective(low_bits, x_high)

        # exact per-size minima, then exact ratio comparison
        block_best = None
        for size in np.unique(sizes[valid]):
            size = int(size)
            value = Fraction(int(numerators[sizes == size].min()), size)
            if block_best is None or value < block_best:
                block_best = value
        if search.best is not None and block_best > search.best:
            continue
        hits = np.nonzero(valid & (numerators * block_best.denominator == block_best.numerator * sizes))[0]
        witness = min(_members(int(row) | (prefix << low), n) for row in hits)
        search.offer(block_best, witness)

    debug_print("Expansion", f"{op}: n={n} optimum={search.best} witness={search.witness}")
    if search.best is None:
        return None, None
    return search.best, VertexSet(search.witness)


def _edge_objective(g: Multigraph):
    a = g.matrix()
    n = g.n
    low = min(n, LOW_BITS)
    row_sums = a.sum(axis=1)
    a_ll, a_lh, a_hh = a[:low, :low], a[:low, low:], a[low:, low:]
    cache = {}

    def objective(low_bits: np.ndarray, x_high: np.ndarray) -> np.ndarray:
        if "quad" not in cache:
            cache["quad"] = np.einsum("ij,jk,ik->i", low_bits, a_ll, low_bits)
            cache["lin"] = low_bits @ row_sums[:low]
            cache["cross"] = low_bits @ a_lh
        # e(S, S^c) = x . rowsum - x^T A x ; loops cancel out
        inside = cache["lin"] + int(x_high @ row_sums[low:])
        quad = cache["quad"] + 2 * (cache["cross"] @ x_high) + int(x_high @ a_hh @ x_high)
        return inside - quad

    return objective


def _vertex_objective(g: Multigraph):
    support = (g.matrix() > 0).astype(np.int32)
    n = g.n
    low = min(n, LOW_BITS)
    cache = {}

    def objective(low_bits: np.ndarray, x_high: np.ndarray) -> np.ndarray:
        if "reach" not in cache:
            cache["reach"] = low_bits @ support[:low, :]
        reach = cache["reach"] + support[low:, :].T @ x_high
        outside = np.concatenate(
            [1 - low_bits, np.broadcast_to(1 - x_high, (low_bits.shape[0], n - low))], axis=1
        )
        # |N(S) \ S|
        return ((reach > 0) & (outside > 0)).sum(axis=1)

    return objective


def edge_cheeger_exact(g: Multigraph, budget: int = BUDGET_SUBSETS, blocks: Optional[List[int]] = None) -> Tuple[Fraction, VertexSet]:
    """min e(S, S^c) / |S| over nonempty S with |S| <= n // 2."""
    _check_searchable(g, budget, "edge_cheeger_exact")
    if g.n < 2:
        raise TooLarge("a single vertex has no proper nonempty subset with |S| <= n/2", op="edge_cheeger_exact")
    return _exhaustive_minimum(g, _edge_objective(g), "edge_cheeger_exact", blocks)


def vertex_expansion_exact(g: Multigraph, budget: int = BUDGET_SUBSETS, blocks: Optional[List[int]] = None) -> Tuple[Fraction, VertexSet]:
    """min |N(S) \\ S| / |S| over nonempty S with |S| <= n // 2."""
    _check_searchable(g, budget, "vertex_expansion_exact")
    if g.n < 2:
        raise TooLarge("a single vertex has no proper nonempty subset with |S| <= n/2", op="vertex_expansion_exact")
    return _exhaustive_minimum(g, _vertex_objective(g), "vertex_expansion_exact", blocks)


def expansion_profile(g: Multigraph, budget: int = BUDGET_SUBSETS) -> ExpansionProfile:
    h_edge, witness_edge = edge_cheeger_exact(g, budget)
    h_vertex, witness_vertex = vertex_expansion_exact(g, budget)
    return ExpansionProfile(h_edge, h_vertex, witness_edge, witness_vertex)


def high_blocks(g: Multigraph, parts: int) -> List[List[int]]:
    """Split the top-bit prefixes into `parts` interleaved groups for workers."""
    high = max(0, g.n - LOW_BITS)
    prefixes = list(range(1 << high))
    return [prefixes[k::parts] for k in range(parts) if prefixes[k::parts]]


def merge_minima(results: List[Tuple[Optional[Fraction], Optional[VertexSet]]]) -> Tuple[Fraction, VertexSet]:
    """Merge partial block results by exact min with lexicographic tie-break."""
    search = _Search()
    for value, witness in results:
        if value is not None:
            search.offer(value, witness.members)
    return search.best, VertexSet(search.witness)


def verify_witnesses(g: Multigraph, profile: ExpansionProfile) -> bool:
    """Recompute both objectives on the witnesses with the plain set definitions."""
    cap = g.n // 2
    for witness in (profile.witness_edge, profile.witness_vertex):
        if not 1 <= len(witness) <= cap:
            return False
    edge_value = Fraction(edge_boundary(g, profile.witness_edge), len(profile.witness_edge))
    vertex_value = Fraction(len(exterior_boundary(g, profile.witness_vertex)), len(profile.witness_vertex))
    return edge_value == profile.h_edge and vertex_value == profile.h_vertex


def cheeger_sandwich_check(profile: ExpansionProfile, summary: SpectralSummary, d: int) -> bool:
    """(1 - lambda2) / 2 <= h_edge / d <= sqrt(2 (1 - lambda2)), with 1e-9 slack."""
    gap = 1.0 - summary.lambda2
    ratio = float(profile.h_edge) / d
    lower = gap / 2.0
    upper = math.sqrt(max(0.0, 2.0 * gap))
    ok = lower - SANDWICH_SLACK <= ratio <= upper + SANDWICH_SLACK
    if not ok:
        print(
            f"[Cheeger] ⚠️ sandwich violated: {lower:.12g} <= {ratio:.12g} <= {upper:.12g} fails",
            file=sys.stderr,
        )
    return ok
