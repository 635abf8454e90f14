"""
Theorem verdicts for vertex-transitive graphs.

For a finite, connected, non-bipartite, vertex-transitive d-regular graph with
isoperimetric constant h, the nontrivial normalized spectrum lies in

    ( -1 + h^4 / (2^9 d^10) ,  1 - h^2 / (2 d^2) ]

This module measures every quantity in that statement, evaluates the closed
forms exactly, and exposes the orbit-intersection counts that drive the
lower-endpoint argument.
"""
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from spectralTools.coverTool import PermutationCover, fiber_census, largest_fiber
from spectralTools.errors import (
    BoundViolation,
    Disconnected,
    NonPositiveEpsilon,
    NotApplicable,
    OutOfRange,
    TooLarge,
)
from spectralTools.expansionTool import expansion_profile
from spectralTools.graphCore import (
    Multigraph,
    VertexSet,
    is_bipartite,
    is_connected,
    is_independent,
    validate_regular,
)
from spectralTools.helper import (
    UPPER_SLACK,
    Budgets,
    debug_print,
    format_real,
    fraction_str,
    round_real,
)
from spectralTools.spectrumTool import normalized_spectrum, two_sided_gap
from spectralTools.symmetryTool import (
    PermGroup,
    automorphism_group,
    index_two_subgroups,
    inverse,
    is_automorphism,
    is_vertex_transitive,
    orbits,
    transitivity_order,
)

Number = Union[int, float, Fraction]

# (power of two, power of d) in the denominator of ell
ELL_VARIANTS = {
    "theorem21": (12, 8),
    "theorem23": (9, 10),
}

CSV_COLUMNS = [
    "graph_id", "n", "d", "h_edge", "h_vertex", "lambda2", "lambda_min",
    "lower_bound", "upper_bound", "applicable", "pass_lower", "pass_upper",
]


def _exact(x: Number) -> bool:
    return isinstance(x, (int, Fraction))


def ell(epsilon: Number, d: int, variant: str = "theorem23") -> Number:
    """
    Width of the excluded window above -1.

    Args:
        epsilon: vertex expansion constant, > 0
        d: degree, >= 1
        variant: "theorem21" for eps^4 / (2^12 d^8), "theorem23" for eps^4 / (2^9 d^10)

    Returns:
        Fraction when epsilon is an int or Fraction, float otherwise
    """
    if variant not in ELL_VARIANTS:
        raise OutOfRange(f"unknown variant {variant!r}; expected one of {sorted(ELL_VARIANTS)}", op="ell")
    if d < 1:
        raise OutOfRange(f"degree must be >= 1, got {d}", op="ell")
    if epsilon <= 0:
        raise NonPositiveEpsilon(f"epsilon must be positive, got {epsilon}", op="ell")
    power_two, power_d = ELL_VARIANTS[variant]
    denominator = 2 ** power_two * d ** power_d
    if _exact(epsilon):
        return Fraction(epsilon) ** 4 / denominator
    return float(epsilon) ** 4 / denominator


def gamma(ell_value: Number, d: int) -> float:
    """d^2 * sqrt(2 l (2 - l)) for 0 <= l <= 2."""
    if not 0 <= ell_value <= 2:
        raise OutOfRange(f"ell must lie in [0, 2], got {ell_value}", op="gamma")
    x = Fraction(ell_value) if _exact(ell_value) else float(ell_value)
    return d * d * math.sqrt(float(2 * x * (2 - x)))


def proof_gamma(epsilon: Number, d: int) -> float:
    """gamma evaluated at the inner ratio eps^4 / (2^9 d^8) used in the lower-endpoint argument."""
    inner = ell(epsilon, d, "theorem23") * d * d
    return gamma(inner, d)


def orbit_intersection_ceiling(epsilon: Number, d: int, n: int) -> float:
    """(2 d gamma / eps + sqrt(6 d^2 gamma / eps^2)) * n / 2."""
    g = proof_gamma(epsilon, d)
    eps = float(epsilon)
    return (2 * d * g / eps + math.sqrt(6 * d * d * g / (eps * eps))) * n / 2


def lower_endpoint(h: Fraction, d: int) -> float:
    return float(-1 + ell(h, d, "theorem23")) if h > 0 else -1.0


def upper_endpoint(h: Fraction, d: int) -> float:
    return float(1 - Fraction(h) ** 2 / (2 * d * d))


@dataclass
class BoundReport:
    graph_id: str
    n: int
    d: int
    bipartite: bool
    connected: bool
    vertex_transitive: Optional[bool]
    h_edge: Optional[Fraction]
    h_vertex: Optional[Fraction]
    lambda2: Optional[float]
    lambda_min: Optional[float]
    lower_bound: Optional[float]
    lower_bound_edge_variant: Optional[float]
    upper_bound: Optional[float]
    applicable: Optional[bool]
    pass_lower: Optional[bool]
    pass_upper: Optional[bool]
    pass_lower_edge_variant: Optional[bool] = None
    aut_order: Optional[int] = None
    two_sided_gap: Optional[float] = None
    complete: bool = True
    notes: List[str] = field(default_factory=list)

    @property
    def violated(self) -> bool:
        """An applicable graph whose spectrum escapes the interval."""
        if self.applicable is not True:
            return False
        return False in (self.pass_lower, self.pass_upper, self.pass_lower_edge_variant)

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "d": self.d,
            "bipartite": self.bipartite,
            "connected": self.connected,
            "vertex_transitive": self.vertex_transitive,
            "aut_order": self.aut_order,
            "h_edge": fraction_str(self.h_edge),
            "h_vertex": fraction_str(self.h_vertex),
            "lambda2": round_real(self.lambda2),
            "lambda_min": round_real(self.lambda_min),
            "two_sided_gap": round_real(self.two_sided_gap),
            "lower_bound": round_real(self.lower_bound),
            "lower_bound_edge_variant": round_real(self.lower_bound_edge_variant),
            "upper_bound": round_real(self.upper_bound),
            "applicable": self.applicable,
            "pass_lower": self.pass_lower,
            "pass_lower_edge_variant": self.pass_lower_edge_variant,
            "pass_upper": self.pass_upper,
            "complete": self.complete,
            "notes": list(self.notes),
        }

    def csv_row(self) -> dict:
        def flag(value: Optional[bool]) -> str:
            return "" if value is None else str(value).lower()

        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "d": self.d,
            "h_edge": fraction_str(self.h_edge) or "",
            "h_vertex": fraction_str(self.h_vertex) or "",
            "lambda2": format_real(self.lambda2) or "",
            "lambda_min": format_real(self.lambda_min) or "",
            "lower_bound": format_real(self.lower_bound) or "",
            "upper_bound": format_real(self.upper_bound) or "",
            "applicable": flag(self.applicable),
            "pass_lower": flag(self.pass_lower),
            "pass_upper": flag(self.pass_upper),
        }


def _symmetry(g: Multigraph, budgets: Budgets, certificate: Optional[PermGroup], notes: List[str]) -> Tuple[Optional[bool], Optional[int], bool]:
    """(vertex_transitive, aut_order, measured)"""
    try:
        group = automorphism_group(g, budgets.aut, budgets.aut_order)
        return is_vertex_transitive(group)[0], group.order, True
    except TooLarge as e:
        if certificate is not None and is_vertex_transitive(certificate)[0] \
                and all(is_automorphism(g, s) for s in certificate.generators):
            notes.append(f"{e.describe()}; vertex-transitivity certified by a supplied group of order {certificate.order}")
            return True, None, True
        notes.append(e.describe())
        return None, None, False


def verify_theorem1(g: Multigraph, graph_id: str = "graph", budgets: Optional[Budgets] = None, certificate: Optional[PermGroup] = None) -> BoundReport:
    """
    Measure everything the interval statement talks about and decide it.

    Inapplicable graphs (disconnected, bipartite, not vertex-transitive,
    n < 4) keep their measurements with applicable = False and no verdict.
    When a budget is exceeded the report is partial: complete = False, the
    unmeasured fields are None and notes name the budget.

    Args:
        g: the graph, must be regular
        graph_id: label carried into the report
        budgets: search caps (environment defaults when None)
        certificate: optional transitive automorphism group used when the
            full automorphism search exceeds its budget (Cayley graphs)
    """
    budgets = (budgets or Budgets()).validate()
    d = validate_regular(g)
    notes: List[str] = []
    connected = is_connected(g)
    bipartite = is_bipartite(g)
    summary = gap = None
    if d == 0:
        notes.append("degree 0: no normalized adjacency operator")
    else:
        summary = normalized_spectrum(g, d)
        try:
            gap = two_sided_gap(summary)
        except Disconnected:
            gap = 0.0

    vertex_transitive, aut_order, complete = _symmetry(g, budgets, certificate, notes)

    h_edge = h_vertex = None
    if not connected:
        h_edge = h_vertex = Fraction(0)
        notes.append("disconnected: a component of size <= n/2 has empty boundary")
    elif g.n >= 2:
        try:
            profile = expansion_profile(g, budgets.subsets)
            h_edge, h_vertex = profile.h_edge, profile.h_vertex
        except TooLarge as e:
            notes.append(e.describe())
            complete = False

    lower = lower_edge = upper = None
    if h_vertex is not None and d >= 1:
        lower = lower_endpoint(h_vertex, d)
        lower_edge = lower_endpoint(h_edge, d)
        upper = upper_endpoint(h_edge, d)

    if d == 0 or not connected or bipartite or g.n < 4:
        applicable = False
    else:
        applicable = vertex_transitive

    pass_lower = pass_upper = pass_lower_edge = None
    if applicable and lower is not None:
        pass_lower = summary.lambda_min > lower
        pass_lower_edge = summary.lambda_min > lower_edge
        pass_upper = summary.lambda2 <= upper + UPPER_SLACK

    report = BoundReport(
        graph_id=graph_id,
        n=g.n,
        d=d,
        bipartite=bipartite,
        connected=connected,
        vertex_transitive=vertex_transitive,
        h_edge=h_edge,
        h_vertex=h_vertex,
        lambda2=summary.lambda2 if summary else None,
        lambda_min=summary.lambda_min if summary else None,
        lower_bound=lower,
        lower_bound_edge_variant=lower_edge,
        upper_bound=upper,
        applicable=applicable,
        pass_lower=pass_lower,
        pass_upper=pass_upper,
        pass_lower_edge_variant=pass_lower_edge,
        aut_order=aut_order,
        two_sided_gap=gap,
        complete=complete,
        notes=notes,
    )
    if report.violated:
        print(
            f"[Verifier] ❌ THEOREM 1 VIOLATED on {graph_id}: lambda_min={report.lambda_min!r} "
            f"lower={lower!r} lambda2={report.lambda2!r} upper={upper!r}",
            file=sys.stderr,
        )
    debug_print("Verifier", f"{graph_id}: applicable={applicable} pass_lower={pass_lower} pass_upper={pass_upper}")
    return report


def theorem23_margin(g: Multigraph, budgets: Optional[Budgets] = None, report: Optional[BoundReport] = None) -> Tuple[float, float, float]:
    """(lambda_min, -1 + ell(h_vertex, d), margin) for an applicable graph; a margin <= 0 raises BoundViolation."""
    report = report or verify_theorem1(g, budgets=budgets)
    if report.applicable is not True or report.h_vertex is None:
        raise NotApplicable(
            f"{report.graph_id} is not a connected non-bipartite vertex-transitive graph with n >= 4",
            op="theorem23_margin",
        )
    bound = -1 + float(ell(report.h_vertex, report.d, "theorem23"))
    margin = report.lambda_min - bound
    if margin <= 0:
        raise BoundViolation(
            f"lambda_min {report.lambda_min!r} is not above {bound!r} on {report.graph_id} (margin {margin!r})",
            op="theorem23_margin",
        )
    return report.lambda_min, bound, margin


@dataclass(frozen=True)
class OrbitIntersectionStats:
    counts: Tuple[int, ...]                  # |theta_i(O) & O| per cover index
    orbit_size: int
    transitive_on_orbit: bool
    t: Optional[Fraction] = None             # |H| / |O| when H is transitive on O
    threshold_dt: Optional[Fraction] = None  # |H| / (d t)
    threshold_2t: Optional[Fraction] = None  # |H| / (2 t)
    independent_inside: bool = True
    independent_outside: bool = True

    def to_dict(self) -> dict:
        return {
            "counts": list(self.counts),
            "orbit_size": self.orbit_size,
            "transitive_on_orbit": self.transitive_on_orbit,
            "t": fraction_str(self.t),
            "threshold_dt": fraction_str(self.threshold_dt),
            "threshold_2t": fraction_str(self.threshold_2t),
            "independent_inside": self.independent_inside,
            "independent_outside": self.independent_outside,
        }


def orbit_intersection_stats(g: Multigraph, cover: PermutationCover, H: PermGroup, O) -> OrbitIntersectionStats:
    orbit = O if isinstance(O, VertexSet) else VertexSet.of(O, g.n)
    inside = orbit.as_set()
    counts = tuple(len({theta[x] for x in inside} & inside) for theta in cover.thetas)
    outside = [v for v in range(g.n) if v not in inside]

    transitive = len(orbit) > 0 and orbit in orbits(H)
    t = threshold_dt = threshold_2t = None
    if transitive:
        t = Fraction(H.order, len(orbit))
        threshold_dt = Fraction(H.order) / (cover.d * t)
        threshold_2t = Fraction(H.order) / (2 * t)
    return OrbitIntersectionStats(
        counts=counts,
        orbit_size=len(orbit),
        transitive_on_orbit=transitive,
        t=t,
        threshold_dt=threshold_dt,
        threshold_2t=threshold_2t,
        independent_inside=is_independent(g, orbit),
        independent_outside=is_independent(g, outside),
    )


@dataclass(frozen=True)
class FiberChain:
    i: int                  # index of a largest fibre
    fiber_size: int         # |H''|
    image_size: int         # |{h^-1(theta_j(v)) : h in H''}|
    subset_size: int        # |H'|
    d: int
    t: int

    @property
    def holds(self) -> bool:
        """image >= |H''| / t >= |H'| / (d t)."""
        return Fraction(self.image_size) >= Fraction(self.fiber_size, self.t) >= Fraction(self.subset_size, self.d * self.t)


def fiber_chain_check(g: Multigraph, cover: PermutationCover, G: PermGroup, subset: Sequence[Sequence[int]], v: int, j: int) -> FiberChain:
    """Evaluate the pigeonhole chain on a largest fibre of g -> i_{g,v,j} over `subset`."""
    t = transitivity_order(G)
    census = fiber_census(g, cover, subset, v, j)
    i, members = largest_fiber(g, cover, subset, census)
    u = cover.thetas[j][v]
    image = {inverse(h)[u] for h in members}
    return FiberChain(i, len(members), len(image), len(subset), cover.d, t)


@dataclass(frozen=True)
class OrbitScanEntry:
    subgroup_order: int
    orbit: VertexSet
    stats: OrbitIntersectionStats

    def to_dict(self) -> dict:
        return {"subgroup_order": self.subgroup_order, "orbit": self.orbit.to_list(), **self.stats.to_dict()}


def index_two_orbit_scan(g: Multigraph, cover: PermutationCover, G: PermGroup, budget: Optional[int] = None) -> List[OrbitScanEntry]:
    """Orbit statistics for every index-two subgroup of G with exactly two vertex orbits."""
    subgroups = index_two_subgroups(G) if budget is None else index_two_subgroups(G, budget)
    entries = []
    for H in subgroups:
        parts = orbits(H)
        if len(parts) != 2:
            continue
        entries.append(OrbitScanEntry(H.order, parts[0], orbit_intersection_stats(g, cover, H, parts[0])))
    debug_print("Verifier", f"index_two_orbit_scan: {len(subgroups)} subgroups, {len(entries)} with two orbits")
    return entries
