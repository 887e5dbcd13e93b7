"""
Tests for bound reports, the general inequalities and the catalog of exact values.
"""

from math import comb

import pytest

from src.algebra.cuplength import verify_certificate
from src.algebra.fields import Q
from src.algebra.rings import TensorRing
from src.algebra.serialization import BOUND_REPORT_SCHEMA, validate_document
from src.bounds.catalog import (
    catalog_cp_pair, catalog_polygon, catalog_sphere_pair, catalog_torus, catalog_wedge, rp_pair_bounds
)
from src.bounds.report import (
    BoundReport, PairFacts, SpaceFacts, chain_rules, is_monotone_in_subspace, upper_from_dim_conn
)
from src.combinatorics.lengths import parse_lengths, parse_partition
from src.planners.projective import build_quaternion_map
from src.ui.console_interface import bounds_line
from src.utils.config import VerificationConfig
from src.utils.errors import DegenerateLength, InconsistentFacts, PreconditionFailed

P_PRIME = "1|3|4|2,5|6"
P_DOUBLE = "1|2|4|5|3,6"
P_TRIPLE = "1,4|6|2,3,5"
P_DEGENERATE = "1|2|6|3,4,5"


def rules(report: BoundReport):
    return [step.rule for step in report.steps]


class TestBoundReport:

    def test_exact_and_value(self):
        report = BoundReport()
        report.raise_lower(3, "cat-lower", "cite")
        assert not report.exact and report.value is None
        report.cap_upper(3, "dim-conn", "cite")
        assert report.exact and report.value == 3

    def test_withheld_exactness_stays_a_range(self):
        report = BoundReport()
        report.raise_lower(3, "cup-length", "cite")
        report.cap_upper(3, "planner", "cite")
        report.withhold_exact("outside the closed form")
        assert not report.exact and report.value is None
        assert report.to_json()["exact"] is False
        assert bounds_line(report) == "3 ≤ TC ≤ 3"

    def test_lower_bound_never_decreases(self):
        report = BoundReport()
        report.raise_lower(4, "a", "")
        report.raise_lower(2, "b", "")
        assert report.lower == 4

    def test_subspace_tc_is_not_a_lower_bound(self):
        with pytest.raises(PreconditionFailed):
            BoundReport().raise_lower(5, "subspace-tc", "TC(Y)")

    def test_crossing_bounds(self):
        report = BoundReport()
        report.cap_upper(2, "x", "")
        with pytest.raises(InconsistentFacts):
            report.raise_lower(3, "y", "")

    def test_json_layout(self):
        report = catalog_sphere_pair(4, 2)
        document = report.to_json()
        validate_document(document, BOUND_REPORT_SCHEMA)
        assert list(document) == ["lower", "upper", "exact", "steps"]
        assert list(document["steps"][0]) == ["rule", "cite", "value"]


class TestGeneralInequalities:

    def test_contractible(self):
        report = chain_rules(PairFacts(SpaceFacts(dim=3, contractible=True)))
        assert report.exact and report.value == 1

    def test_non_contractible_gives_two(self):
        report = chain_rules(PairFacts(SpaceFacts(dim=2)))
        assert report.lower == 2 and report.upper is None

    def test_absolute_tc_upper(self):
        report = chain_rules(PairFacts(SpaceFacts(dim=2, known_cat=2, known_tc=3)))
        assert (report.lower, report.upper) == (2, 3)
        assert "absolute-tc" in rules(report)

    @pytest.mark.parametrize("kwargs", [
        {"dim": 2, "contractible": True, "known_cat": 2},
        {"dim": 2, "known_cat": 1},
        {"dim": 2, "known_cat": 4, "known_tc": 3}
    ])
    def test_inconsistent_facts(self, kwargs):
        with pytest.raises(InconsistentFacts):
            SpaceFacts(**kwargs)

    @pytest.mark.parametrize("dim_x,s,dim_y,expected", [(6, 1, 4, 6), (3, 0, 2, 6), (4, 3, 4, 3), (2, 1, 0, 2)])
    def test_dim_conn(self, dim_x, s, dim_y, expected):
        assert upper_from_dim_conn(SpaceFacts(dim=dim_x, connectivity=s), dim_y) == expected


class TestCatalog:

    @pytest.mark.parametrize("n,m", [(2, 1), (4, 2), (5, 3)])
    def test_sphere_pair(self, n, m):
        report = catalog_sphere_pair(n, m)
        assert report.value == 2
        assert "planner" in rules(report)

    def test_sphere_pair_precondition(self):
        with pytest.raises(PreconditionFailed):
            catalog_sphere_pair(2, 2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_torus(self, n):
        report = catalog_torus(n)
        assert report.value == n + 1
        certificate = report.certificates[0]
        assert certificate.k == n
        assert "topological-group" in rules(report)

    @pytest.mark.parametrize("dims,m", [((2, 2, 3), 2), ((1, 2, 3), 2), ((3, 1, 1, 2), 3), ((1, 1, 1), 2)])
    def test_wedge(self, dims, m):
        report = catalog_wedge(dims, m)
        assert report.value == 3
        certificate = report.certificates[0]
        tensor_ring = certificate.ring
        assert isinstance(tensor_ring, TensorRing)
        g_out = tensor_ring.left.generator(f"g{m + 1}")
        g_first = tensor_ring.right.generator("g1")
        assert certificate.product == -tensor_ring.pure(g_out, g_first)

    def test_wedge_point(self):
        assert catalog_wedge((2, 3), 0).value == 2

    @pytest.mark.parametrize("dims", [(2, 3), (2, 2, 3)])
    def test_single_sphere_subwedge_is_a_range(self, dims):
        report = catalog_wedge(dims, 1)
        assert (report.lower, report.upper) == (3, 3)
        assert not report.exact and report.value is None
        assert report.to_json()["exact"] is False
        assert "planner" in rules(report)

    @pytest.mark.parametrize("n,m", [(n, m) for n in range(0, 6) for m in range(0, n + 1)])
    def test_cp_pair(self, n, m):
        report = catalog_cp_pair(n, m)
        assert report.value == n + m + 1
        if n > 0:
            assert report.certificates[0].coefficient == (-1) ** m * comb(n + m, m)

    def test_cp_pair_orders_arguments(self):
        report = catalog_cp_pair(1, 3)
        assert report.value == 5
        assert any("reordered" in step.value for step in report.steps)


class TestPolygons:

    def test_single_polygon(self, fibonacci_lengths):
        report = catalog_polygon(fibonacci_lengths)
        assert report.value == 7
        assert report.certificates[0].k == 6

    @pytest.mark.parametrize("text,expected", [(P_PRIME, 6), (P_DOUBLE, 6), (P_TRIPLE, 4)])
    def test_pairs(self, fibonacci_lengths, text, expected):
        report = catalog_polygon(fibonacci_lengths, parse_partition(text, 6))
        assert report.value == expected
        assert any(step.value == "pullback check passed" for step in report.steps)

    def test_degenerate_pair(self, fibonacci_lengths):
        with pytest.raises(DegenerateLength):
            catalog_polygon(fibonacci_lengths, parse_partition(P_DEGENERATE, 6))

    def test_monotone_in_subspace(self, fibonacci_lengths):
        reports = [
            catalog_polygon(fibonacci_lengths, parse_partition(P_TRIPLE, 6)),
            catalog_polygon(fibonacci_lengths, parse_partition(P_PRIME, 6)),
            catalog_polygon(fibonacci_lengths)
        ]
        assert is_monotone_in_subspace(reports)
        assert not is_monotone_in_subspace(list(reversed(reports)))

    def test_rational_lengths(self):
        report = catalog_polygon(parse_lengths("1/2,1/2,1,3/2,5/2,7/2"), parse_partition(P_PRIME, 6))
        assert report.value == 6


class TestProjectivePairs:

    def test_desk_case_with_quaternions(self):
        report = rp_pair_bounds(3, 2, witnesses=[build_quaternion_map(3, 2)])
        assert (report.lower, report.upper) == (4, 4)
        assert report.certificates[0].k == 3
        assert any("binomial parity" in step.value for step in report.steps)
        assert any("not a closed form" in step.value for step in report.steps)

    def test_polynomial_witness_only(self):
        report = rp_pair_bounds(3, 2)
        assert (report.lower, report.upper) == (4, 6)
        assert not report.exact

    def test_known_absolute_value(self):
        report = rp_pair_bounds(3, 2, known_tc=4)
        assert report.value == 4

    @pytest.mark.parametrize("n,m", [(3, 3), (2, 1), (4, 1)])
    def test_precondition(self, n, m):
        with pytest.raises(PreconditionFailed):
            rp_pair_bounds(n, m)

    def test_witness_shape(self):
        with pytest.raises(PreconditionFailed):
            rp_pair_bounds(4, 2, witnesses=[build_quaternion_map(3, 2)])

    def test_planner_verification(self):
        config = VerificationConfig(samples=300, nonsingular_samples=2_000)
        report = rp_pair_bounds(3, 2, witnesses=[build_quaternion_map(3, 2)], verify_samples=300, verification=config)
        assert any("4-rule planner" in step.value for step in report.steps)

    def test_rational_field(self):
        report = rp_pair_bounds(3, 2, field=Q)
        assert report.lower == 4
        assert not any("binomial parity" in step.value for step in report.steps)


class TestEmittedCertificates:

    @pytest.mark.parametrize("build", [
        lambda: catalog_torus(4),
        lambda: catalog_wedge((2, 2, 3), 2),
        lambda: catalog_cp_pair(3, 2),
        lambda: catalog_polygon(parse_lengths("1,1,2,3,5,7"), parse_partition(P_PRIME, 6)),
        lambda: rp_pair_bounds(5, 3)
    ], ids=["torus", "wedge", "cp-pair", "polygon-pair", "rp-pair"])
    def test_every_certificate_reverifies(self, build):
        report = build()
        assert report.certificates
        for certificate in report.certificates:
            assert verify_certificate(certificate)
            assert certificate.bound_implied <= report.lower
