"""
Tests for the sphere, wedge and projective planners and their sampling verification.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.algebra.serialization import PATH_SAMPLE_SCHEMA, VERIFICATION_SCHEMA, validate_document
from src.planners.projective import (
    BilinearMap, ProjectivePairPlanner, build_polymul_map, build_quaternion_map, check_nonsingular,
    diagonal_positivize, plan_projective_pair
)
from src.planners.sphere import SpherePairPlanner, plan_sphere_pair
from src.planners.spaces import WedgePoint, projective_distance
from src.planners.verification import VerificationRecord, continuity_profile, require_passed, verify_planner
from src.planners.wedge import WedgePairPlanner, plan_wedge_pair
from src.utils.config import VerificationConfig
from src.utils.errors import (
    IndexOutOfRange, NotInSubsphere, NotNonsingular, NotOnSphere, PlannerVerificationFailed,
    PreconditionFailed, SubwedgeViolation
)

SMALL = VerificationConfig(samples=400, chunk_size=100, nonsingular_samples=2_000)


def zero_map(n: int, m: int, k: int) -> BilinearMap:
    coefficients = np.full((n + 1, m + 1, k), Fraction(0), dtype=object)
    return BilinearMap(n, m, k, coefficients, origin="zero map")


def tilted_map(epsilon: Fraction = Fraction(1, 10)) -> BilinearMap:
    """(ε x·y, x0 y1 - x1 y0 - 2 x·y) on R^2 x R^2: non-singular, second component dominant near the diagonal."""
    coefficients = np.full((2, 2, 2), Fraction(0), dtype=object)
    coefficients[0, 0, 0] = coefficients[1, 1, 0] = epsilon
    coefficients[0, 1, 1], coefficients[1, 0, 1] = Fraction(1), Fraction(-1)
    coefficients[0, 0, 1] = coefficients[1, 1, 1] = Fraction(-2)
    return BilinearMap(1, 1, 2, coefficients, origin="tilted rotation", certified=True, positivized=True)


class TestSpherePlanner:

    def test_rule_one_near_base_point(self):
        path = plan_sphere_pair(2, 1, [1, 0, 0], [0, 1])
        assert path.rule == 1
        assert np.allclose(path.points[0], [1, 0, 0])
        assert np.allclose(path.points[-1], [0, 1, 0])

    def test_rule_two_near_antipode(self):
        planner = SpherePairPlanner(4, 2)
        query = planner.query([-1, 0, 0, 0, 0], [0, 0, 1, 0, 0])
        path = planner.plan(query)
        assert path.rule == 2
        assert planner.endpoint_error(query, path) < 1e-12
        assert np.allclose(np.linalg.norm(path.points, axis=1), 1.0)

    def test_goal_outside_subsphere(self):
        planner = SpherePairPlanner(2, 1)
        with pytest.raises(NotInSubsphere):
            planner.query([1, 0, 0], [0, 0, 1])

    def test_point_off_sphere(self):
        with pytest.raises(NotOnSphere):
            SpherePairPlanner(2, 1).query([1, 1, 0], [1, 0])

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 0), (1, 2)])
    def test_precondition(self, n, m):
        with pytest.raises(PreconditionFailed):
            SpherePairPlanner(n, m)

    def test_path_json(self):
        document = plan_sphere_pair(3, 1, [0, 0, 0, 1], [0, 1]).to_json()
        validate_document(document, PATH_SAMPLE_SCHEMA)
        assert document["t"][0] == 0.0 and document["t"][-1] == 1.0
        assert len(document["t"]) == len(document["points"])


class TestWedgePlanner:

    @pytest.fixture
    def planner(self) -> WedgePairPlanner:
        return WedgePairPlanner([2, 2, 3], 2)

    def test_rule_counts_caps(self, planner):
        in_c = planner.point(2, [0, 1, 0])
        in_cap = planner.point(3, [-1, 0, 0, 0])
        goal_c = planner.point(1, [0, 0, 1])
        goal_cap = planner.point(2, [-0.6, 0.8, 0])
        assert planner.plan((in_c, goal_c)).rule == 1
        assert planner.plan((in_cap, goal_c)).rule == 2
        assert planner.plan((in_c, goal_cap)).rule == 2
        assert planner.plan((in_cap, goal_cap)).rule == 3

    def test_wedge_point_is_canonical(self, planner):
        assert planner.point(1, [1, 0, 0]).is_base
        assert planner.point(0).is_base

    def test_endpoints(self, planner):
        query = (planner.point(3, [0, 0, 0.6, -0.8]), planner.point(1, [-1, 0, 0]))
        path = planner.plan(query)
        start, goal = planner.endpoints(query)
        assert np.allclose(path.points[0], start)
        assert np.allclose(path.points[-1], goal)

    def test_goal_outside_subwedge(self, planner):
        with pytest.raises(SubwedgeViolation):
            planner.query(planner.point(1, [0, 1, 0]), planner.point(3, [0, 1, 0, 0]))

    def test_index_out_of_range(self, planner):
        with pytest.raises(IndexOutOfRange):
            planner.point(4, [1, 0])

    @pytest.mark.parametrize("dims,m", [([2], 0), ([2, 0], 1), ([2, 3], 2)])
    def test_precondition(self, dims, m):
        with pytest.raises(PreconditionFailed):
            WedgePairPlanner(dims, m)

    def test_plan_helper(self):
        path = plan_wedge_pair([1, 1], 1, WedgePoint(2, np.array([-1.0, 0.0])), WedgePoint.base())
        assert path.rule == 2
        assert np.allclose(path.points[-1], 0.0)


class TestBilinearMaps:

    def test_quaternion_norm_identity(self):
        f = build_quaternion_map(3, 2)
        rng = np.random.default_rng(7)
        x, y = rng.standard_normal((50, 4)), rng.standard_normal((50, 3))
        assert np.allclose(np.linalg.norm(f(x, y), axis=1), np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1))

    def test_bilinearity(self):
        f = build_polymul_map(3, 2)
        rng = np.random.default_rng(3)
        x, x2, y = rng.standard_normal(4), rng.standard_normal(4), rng.standard_normal(3)
        assert np.allclose(f(2 * x - x2, y), 2 * f(x, y) - f(x2, y))

    def test_exact_polynomial_product(self):
        f = build_polymul_map(1, 1)
        one = Fraction(1)
        assert f.exact([one, one], [one, -one]) == (1, 0, -1)

    def test_coefficient_shape(self):
        with pytest.raises(PreconditionFailed):
            BilinearMap(1, 1, 2, np.full((2, 2, 3), Fraction(0), dtype=object), origin="bad")

    def test_quaternion_precondition(self):
        with pytest.raises(PreconditionFailed):
            build_quaternion_map(4, 2)

    def test_zero_map_is_singular(self):
        with pytest.raises(NotNonsingular):
            check_nonsingular(zero_map(2, 1, 3), samples=500)

    def test_quaternion_ratio_is_one(self):
        assert check_nonsingular(build_quaternion_map(3, 2), samples=1_000) == pytest.approx(1.0)

    def test_quaternion_is_already_positive(self):
        f = diagonal_positivize(build_quaternion_map(3, 2))
        assert f.positivized
        assert f.origin == build_quaternion_map(3, 2).origin

    def test_polynomial_map_is_positivized(self):
        f = diagonal_positivize(build_polymul_map(3, 2))
        unit = [Fraction(int(r == 0)) for r in range(f.k)]
        assert f.positivized
        assert f.diagonal_form(unit).is_positive_definite

    def test_positivize_needs_m_at_most_n(self):
        with pytest.raises(PreconditionFailed):
            diagonal_positivize(build_polymul_map(1, 2))


class TestProjectivePlanner:

    @pytest.fixture
    def planner(self) -> ProjectivePairPlanner:
        return ProjectivePairPlanner(build_quaternion_map(3, 2))

    def test_equal_lines_take_constant_path(self, planner):
        path = planner.plan(planner.query([2, 0, 0, 0], [-1, 0, 0]))
        assert path.rule == 1
        assert np.allclose(path.points, path.points[0])

    def test_rule_maximizes_component(self, planner):
        query = planner.query([0, 0, 0, 1], [0, 1, 0])
        assert planner.rule_for(query) == 3
        path = planner.plan(query)
        assert planner.endpoint_error(query, path) < 1e-9

    def test_path_ends_on_goal_line(self):
        path = plan_projective_pair(build_polymul_map(3, 2), [1, 2, 0, -1], [0, 1, 1])
        goal = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2)
        assert float(projective_distance(path.points[-1], goal)) < 1e-9

    def test_goal_outside_subspace(self, planner):
        with pytest.raises(NotOnSphere):
            planner.query([1, 0, 0, 0], [0, 0, 0, 1])

    def test_zero_vector(self, planner):
        with pytest.raises(NotOnSphere):
            planner.query([0, 0, 0, 0], [1, 0, 0])

    def test_singular_witness_is_rejected(self):
        with pytest.raises(NotNonsingular):
            ProjectivePairPlanner(zero_map(3, 2, 4))

    def test_near_diagonal_pairs_take_the_short_rule(self):
        planner = ProjectivePairPlanner(tilted_map())
        assert planner.diagonal_band == pytest.approx(0.5)
        query = planner.query([np.cos(0.1), np.sin(0.1)], [1, 0])
        margins = planner.margins(query)
        assert margins[1] > margins[0] > 0
        assert planner.rule_for(query) == 1
        path = planner.plan(query)
        assert float(np.dot(path.points[0], path.points[-1])) > 0.99
        assert planner.endpoint_error(query, path) < 1e-9

    def test_far_pairs_use_the_largest_component(self):
        planner = ProjectivePairPlanner(tilted_map())
        query = planner.query([0, 1], [1, 0])
        assert planner.rule_for(query) == 2
        assert planner.endpoint_error(query, planner.plan(query)) < 1e-9

    def test_targets_are_never_nearly_antipodal(self):
        planner = ProjectivePairPlanner(tilted_map())
        floor = -1 + planner.diagonal_band ** 2 / 2
        rng = np.random.default_rng(3)
        for _ in range(300):
            path = planner.plan(planner.sample_query(rng))
            assert float(np.dot(path.points[0], path.points[-1])) >= floor - 1e-9


class TestVerification:

    @pytest.mark.parametrize("planner", [
        SpherePairPlanner(2, 1),
        SpherePairPlanner(5, 3),
        WedgePairPlanner([2, 2, 3], 2),
        ProjectivePairPlanner(build_quaternion_map(3, 2)),
        ProjectivePairPlanner(build_polymul_map(3, 2)),
        ProjectivePairPlanner(tilted_map())
    ], ids=["sphere-2-1", "sphere-5-3", "wedge-223", "rp-quaternion", "rp-polynomial", "rp-tilted"])
    def test_planners_pass(self, planner):
        record = verify_planner(planner, config=SMALL)
        assert record.cover_failures == 0
        assert record.endpoint_max_err <= SMALL.endpoint_tolerance
        require_passed(record)

    def test_record_json(self):
        record = verify_planner(SpherePairPlanner(4, 2), samples=200, seed=11, config=SMALL)
        document = record.to_json()
        validate_document(document, VERIFICATION_SCHEMA)
        assert document["N"] == 200 and document["seed"] == 11

    def test_thread_count_does_not_change_record(self):
        planner = WedgePairPlanner([2, 2, 3], 2)
        single = verify_planner(planner, config=VerificationConfig(samples=400, chunk_size=100, threads=1))
        pooled = verify_planner(planner, config=VerificationConfig(samples=400, chunk_size=100, threads=4))
        assert single.to_json() == pooled.to_json()

    def test_continuity_defect_shrinks(self):
        defects = continuity_profile(SpherePairPlanner(4, 2), halvings=3, config=SMALL)
        assert len(defects) == 4
        assert all(later <= earlier + 1e-12 for earlier, later in zip(defects, defects[1:]))

    def test_failed_record(self):
        record = VerificationRecord(samples=10, cover_failures=1, endpoint_max_err=0.0,
                                    continuity_defect=0.0, seed=0, delta=0.05)
        assert not record.passed()
        with pytest.raises(PlannerVerificationFailed):
            require_passed(record)
