import dataclasses
import math
from fractions import Fraction

import pytest

from spectralTools.coverTool import PermutationCover, bvn_decompose
from spectralTools.errors import BoundViolation, NonPositiveEpsilon, NotApplicable, NotRegular, OutOfRange
from spectralTools.graphCore import VertexSet, from_edge_list
from spectralTools.helper import Budgets
from spectralTools.symmetryTool import automorphism_group, identity, make_group, translation_group
from verifier import (
    CSV_COLUMNS,
    ell,
    fiber_chain_check,
    gamma,
    index_two_orbit_scan,
    orbit_intersection_ceiling,
    orbit_intersection_stats,
    proof_gamma,
    theorem23_margin,
    verify_theorem1,
)


def test_ell_spot_values():
    assert ell(1, 2, "theorem23") == Fraction(1, 524288)
    assert ell(1, 2, "theorem21") == Fraction(1, 1048576)
    assert ell(1, 3, "theorem23") == Fraction(1, 512 * 59049)
    assert isinstance(ell(0.5, 2), float)


def test_ell_errors():
    with pytest.raises(NonPositiveEpsilon):
        ell(0, 2)
    with pytest.raises(NonPositiveEpsilon):
        ell(-1, 2)
    with pytest.raises(OutOfRange):
        ell(1, 2, "theorem99")


def test_gamma_spot_values():
    assert gamma(0, 3) == 0
    assert gamma(2, 3) == 0
    assert gamma(1, 2) == pytest.approx(4 * math.sqrt(2), abs=1e-12)
    for bad in (-0.1, 2.5):
        with pytest.raises(OutOfRange):
            gamma(bad, 2)


@pytest.mark.parametrize("epsilon, d", [(1, 2), (Fraction(1, 2), 3), (2, 4)])
def test_proof_gamma_matches_composed_formula(epsilon, d):
    inner = Fraction(epsilon) ** 4 / (2 ** 9 * d ** 8)
    assert proof_gamma(epsilon, d) == pytest.approx(gamma(inner, d), rel=1e-12)
    assert proof_gamma(epsilon, d) == pytest.approx(gamma(ell(epsilon, d) * d * d, d), rel=1e-12)


def test_orbit_intersection_ceiling_is_linear_in_n():
    one = orbit_intersection_ceiling(1, 3, 10)
    assert one > 0
    assert orbit_intersection_ceiling(1, 3, 20) == pytest.approx(2 * one)


def test_verify_c5(c5):
    report = verify_theorem1(c5, "C5")
    assert report.applicable is True
    assert report.lower_bound == pytest.approx(-1 + 1 / 524288, abs=1e-15)
    assert report.lambda_min == pytest.approx(-0.809017, abs=1e-6)
    assert report.upper_bound == pytest.approx(0.875, abs=1e-15)
    assert report.lambda2 == pytest.approx(0.309017, abs=1e-6)
    assert report.pass_lower and report.pass_upper and report.pass_lower_edge_variant
    assert report.aut_order == 10
    assert report.complete
    assert not report.violated


def test_verify_c4_is_flagged_bipartite(c4):
    report = verify_theorem1(c4, "C4")
    assert report.applicable is False
    assert report.bipartite
    assert report.lambda_min == pytest.approx(-1.0, abs=1e-9)
    assert report.pass_lower is None and report.pass_upper is None


def test_verify_petersen(petersen_graph):
    report = verify_theorem1(petersen_graph, "petersen")
    assert report.applicable is True
    assert report.h_vertex == Fraction(4, 5)
    assert report.lower_bound == pytest.approx(-1 + (4 / 5) ** 4 / (2 ** 9 * 3 ** 10), abs=1e-15)
    assert report.lambda_min == pytest.approx(-2 / 3, abs=1e-9)
    assert report.upper_bound == pytest.approx(1 - 1 / 18, abs=1e-15)
    assert report.lambda2 == pytest.approx(1 / 3, abs=1e-9)
    assert report.pass_lower and report.pass_upper


def test_edge_variant_endpoint_is_never_lower(petersen_graph, k4, c7):
    for g in (petersen_graph, k4, c7):
        report = verify_theorem1(g)
        assert report.h_vertex <= report.h_edge
        assert report.lower_bound <= report.lower_bound_edge_variant


def test_disconnected_graph_keeps_measurements(two_triangles):
    report = verify_theorem1(two_triangles)
    assert report.applicable is False
    assert report.h_edge == 0
    assert report.lambda2 == pytest.approx(1.0, abs=1e-9)


def test_not_regular_is_an_error(path3):
    with pytest.raises(NotRegular):
        verify_theorem1(path3)


def test_partial_report_when_aut_budget_exceeded(c5):
    report = verify_theorem1(c5, "C5", Budgets(aut=4))
    assert report.vertex_transitive is None
    assert report.applicable is None
    assert not report.complete
    assert report.notes
    assert report.h_vertex == 1


def test_supplied_group_certifies_transitivity(c5):
    report = verify_theorem1(c5, "C5", Budgets(aut=4), translation_group("cyclic:5"))
    assert report.vertex_transitive is True
    assert report.complete
    assert report.applicable is True
    assert report.pass_lower and report.pass_upper


def test_report_serialization(c5):
    report = verify_theorem1(c5, "C5")
    assert list(report.csv_row()) == CSV_COLUMNS
    document = report.to_dict()
    assert document["h_edge"] == "1/1"
    assert document["applicable"] is True
    assert verify_theorem1(c5, "C5").to_dict() == document


def test_theorem23_margins(c5, k4, petersen_graph):
    assert theorem23_margin(c5)[2] == pytest.approx(0.190981, abs=1e-6)
    assert theorem23_margin(k4)[2] == pytest.approx(2 / 3, abs=1e-6)
    assert theorem23_margin(petersen_graph)[2] == pytest.approx(1 / 3, abs=1e-6)


def test_theorem23_margin_needs_applicable_graph(c4):
    with pytest.raises(NotApplicable):
        theorem23_margin(c4)


def test_theorem23_margin_raises_on_non_positive_margin(c5):
    report = dataclasses.replace(verify_theorem1(c5, "C5"), lambda_min=-1.0)
    with pytest.raises(BoundViolation) as info:
        theorem23_margin(c5, report=report)
    assert info.value.op == "theorem23_margin"
    assert "C5" in str(info.value)


@pytest.mark.parametrize("n", [1, 3])
def test_edgeless_graph_is_not_applicable(n):
    report = verify_theorem1(from_edge_list(n, []), "empty")
    assert report.d == 0
    assert report.applicable is False
    assert report.lambda2 is None and report.lambda_min is None
    assert report.lower_bound is None and report.upper_bound is None
    assert "degree 0: no normalized adjacency operator" in report.notes
    assert not report.violated
    assert report.csv_row()["lambda_min"] == ""


def test_orbit_counts_on_c4_bipartition(c4):
    rotations = PermutationCover(((1, 2, 3, 0), (3, 0, 1, 2)))
    H = make_group(4, [(0, 1, 2, 3), (2, 3, 0, 1), (0, 3, 2, 1), (2, 1, 0, 3)])
    stats = orbit_intersection_stats(c4, rotations, H, VertexSet.of([0, 2]))
    assert stats.counts == (0, 0)
    assert stats.transitive_on_orbit
    assert stats.t == 2
    assert stats.threshold_dt == 1 and stats.threshold_2t == 1
    assert stats.independent_inside and stats.independent_outside


def test_orbit_counts_on_c5(c5):
    rotations = PermutationCover(((1, 2, 3, 4, 0), (4, 0, 1, 2, 3)))
    trivial = make_group(5, [identity(5)])
    stats = orbit_intersection_stats(c5, rotations, trivial, [0, 1, 2])
    assert stats.counts == (2, 2)
    assert not stats.transitive_on_orbit
    assert stats.threshold_dt is None
    assert not stats.independent_inside
    empty = orbit_intersection_stats(c5, rotations, trivial, [])
    assert empty.counts == (0, 0)


@pytest.mark.parametrize("name", ["c4", "c6"])
def test_index_two_scan_on_bipartite_controls(name, request):
    g = request.getfixturevalue(name)
    entries = index_two_orbit_scan(g, bvn_decompose(g), automorphism_group(g))
    assert entries
    for entry in entries:
        assert entry.orbit.to_list() == list(range(0, g.n, 2))
        assert all(count == 0 for count in entry.stats.counts)
        assert entry.stats.independent_inside and entry.stats.independent_outside


def test_index_two_scan_on_c4_finds_one_subgroup(c4):
    entries = index_two_orbit_scan(c4, bvn_decompose(c4), automorphism_group(c4))
    assert len(entries) == 1
    assert entries[0].subgroup_order == 4


def test_fiber_chain(petersen_graph, c5):
    G = automorphism_group(petersen_graph)
    chain = fiber_chain_check(petersen_graph, bvn_decompose(petersen_graph), G, G.elements, 0, 0)
    assert chain.t == 12
    assert chain.fiber_size >= 40
    assert chain.holds

    G5 = automorphism_group(c5)
    rotations = [p for p in G5.elements if p[1] == (p[0] + 1) % 5]
    chain = fiber_chain_check(c5, bvn_decompose(c5), G5, rotations, 2, 1)
    assert chain.subset_size == 5
    assert chain.holds
