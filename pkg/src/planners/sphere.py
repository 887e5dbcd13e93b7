"""
Sphere pair planner module.
Provides the two-rule motion planner from anywhere in S^n to the standard
subsphere S^m, m < n.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from src.planners.spaces import (
    MotionPlanner, PathSample, as_unit_vector, basis_vector, concatenate, geodesic, normalize,
    random_unit
)
from src.utils.config import PlannerConfig
from src.utils.errors import NotInSubsphere, PreconditionFailed
from src.utils.logger import get_logger

logger = get_logger(__name__)

SphereQuery = Tuple[np.ndarray, np.ndarray]


class SpherePairPlanner(MotionPlanner):
    """
    Two rules for (S^n, S^m).

    Rule 1 serves x1 > -ε and contracts x to e1 along a geodesic. Rule 2
    serves x1 < ε, contracts x to -e1 and follows the fixed path σ from -e1
    through e2 to e1. Both continue with h(y): e1 to e_(m+2) to y, which stays
    off the antipode of every point of S^m.
    """

    def __init__(self, n: int, m: int, config: Optional[PlannerConfig] = None):
        if not 0 < m < n:
            raise PreconditionFailed(f"Sphere pair planner needs 0 < m < n, got n={n}, m={m}")
        super().__init__(config)
        self.n = n
        self.m = m
        self.size = n + 1
        self.e1 = basis_vector(self.size, 1)
        self.pole = basis_vector(self.size, m + 2)
        self._sigma = concatenate([
            geodesic(-self.e1, basis_vector(self.size, 2), self.samples),
            geodesic(basis_vector(self.size, 2), self.e1, self.samples)
        ])[0]
        logger.debug(f"SpherePairPlanner initialized for (S^{n}, S^{m}), ε={self.config.epsilon}")

    @property
    def rule_count(self) -> int:
        return 2

    def query(self, x: Sequence[float], y: Sequence[float]) -> SphereQuery:
        """
        Validate a query.

        y may be given with m+1 or n+1 coordinates.

        Raises:
            NotOnSphere: If x or y is not a unit vector of the right size
            NotInSubsphere: If y has weight outside the first m+1 coordinates
        """
        tolerance = self.config.unit_tolerance
        x = as_unit_vector(x, self.n, tolerance, "x")
        y = np.asarray(y, dtype=float)
        if y.shape == (self.m + 1,):
            y = np.concatenate([y, np.zeros(self.n - self.m)])
        y = as_unit_vector(y, self.n, tolerance, "y")
        if np.any(np.abs(y[self.m + 1:]) > tolerance):
            raise NotInSubsphere(f"y is not on the standard S^{self.m} inside S^{self.n}")
        y[self.m + 1:] = 0.0
        return x, normalize(y)

    def margins(self, query: SphereQuery) -> np.ndarray:
        x, _ = query
        eps = self.config.epsilon
        return np.array([eps + x[0], eps - x[0]])

    def rule_for(self, query: SphereQuery) -> int:
        margins = self.margins(query)
        return 1 if margins[0] >= margins[1] else 2

    def _h(self, y: np.ndarray) -> np.ndarray:
        return concatenate([
            geodesic(self.e1, self.pole, self.samples),
            geodesic(self.pole, y, self.samples)
        ])[0]

    def plan(self, query: SphereQuery) -> PathSample:
        x, y = query
        rule = self.rule_for(query)
        if rule == 1:
            segments = [geodesic(x, self.e1, self.samples)]
        else:
            segments = [geodesic(x, -self.e1, self.samples), self._sigma]
        segments.append(self._h(y))
        points, params = concatenate(segments)
        return PathSample(points, params, rule, piece=rule)

    def endpoints(self, query: SphereQuery) -> Tuple[np.ndarray, np.ndarray]:
        return query

    def sample_query(self, rng: np.random.Generator) -> SphereQuery:
        x = random_unit(rng, self.size)
        y = np.concatenate([random_unit(rng, self.m + 1), np.zeros(self.n - self.m)])
        return x, y

    def sample_direction(self, rng: np.random.Generator, query: SphereQuery):
        return rng.standard_normal(self.size), rng.standard_normal(self.m + 1)

    def perturb(self, query: SphereQuery, direction, delta: float) -> SphereQuery:
        x, y = query
        dx, dy = direction
        y_moved = y.copy()
        y_moved[: self.m + 1] += delta * dy
        return normalize(x + delta * dx), normalize(y_moved)


def plan_sphere_pair(
    n: int,
    m: int,
    x: Sequence[float],
    y: Sequence[float],
    epsilon: float = 0.5
) -> PathSample:
    """Path from x in S^n to y in S^m under the two-rule planner."""
    planner = SpherePairPlanner(n, m, PlannerConfig(epsilon=epsilon))
    return planner.plan(planner.query(x, y))
