"""
Wedge pair planner module.
Provides the three-rule motion planner from a wedge of spheres into the
subwedge of its first m spheres.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.planners.spaces import (
    MotionPlanner, PathSample, WedgePoint, as_unit_vector, basis_vector, concatenate, constant,
    geodesic, normalize, random_unit
)
from src.utils.config import PlannerConfig
from src.utils.errors import IndexOutOfRange, PreconditionFailed, SubwedgeViolation
from src.utils.logger import get_logger

logger = get_logger(__name__)

WedgeQuery = Tuple[WedgePoint, WedgePoint]


class WedgePairPlanner(MotionPlanner):
    """
    Three rules for (S^a1 ∨ ... ∨ S^an, S^a1 ∨ ... ∨ S^am).

    Every sphere meets the others at x0 = e1. The cap D_i is the open
    hemisphere p1 < 0 around x_i = -e1; the set C is p1 > -ε on every sphere.
    A point in C slides to x0 along its geodesic; a point in D_i slides to x_i,
    then follows the meridian σ_i through e2 to x0. The rule number is one plus
    the number of query coordinates sent through a cap.
    """

    def __init__(self, dims: Sequence[int], m: int, config: Optional[PlannerConfig] = None):
        dims = [int(a) for a in dims]
        if len(dims) < 2 or any(a < 1 for a in dims):
            raise PreconditionFailed(f"Wedge planner needs at least two spheres of positive dimension, got {dims}")
        if not 0 <= m < len(dims):
            raise PreconditionFailed(f"Subwedge size must satisfy 0 <= m < {len(dims)}, got {m}")
        super().__init__(config)
        self.dims = dims
        self.m = m
        self.offsets: List[int] = list(np.cumsum([0] + [a + 1 for a in dims[:-1]]))
        self.size = sum(a + 1 for a in dims)
        logger.debug(f"WedgePairPlanner initialized for dims {dims}, m={m}")

    @property
    def rule_count(self) -> int:
        return 3

    def point(self, index: int, coords: Optional[Sequence[float]] = None) -> WedgePoint:
        """
        Validate a wedge point given by a 1-based sphere index and coordinates.

        Index 0 or coordinates equal to e1 give the wedge point.
        """
        if index == 0:
            return WedgePoint.base()
        if not 1 <= index <= len(self.dims):
            raise IndexOutOfRange(f"Sphere index {index} outside [1..{len(self.dims)}]")
        dim = self.dims[index - 1]
        vector = as_unit_vector(coords, dim, self.config.unit_tolerance, f"point on S^{dim}")
        if np.linalg.norm(vector - basis_vector(dim + 1, 1)) <= self.config.unit_tolerance:
            return WedgePoint.base()
        return WedgePoint(index, vector)

    def query(self, p: WedgePoint, q: WedgePoint) -> Tuple[WedgePoint, WedgePoint]:
        if q.index > self.m:
            raise SubwedgeViolation(f"Goal lies on sphere {q.index}, outside the first {self.m} spheres")
        return p, q

    def embed(self, index: int, local: np.ndarray) -> np.ndarray:
        """Local sphere coordinates (rows) into the ambient space, x0 at the origin."""
        local = np.atleast_2d(local)
        out = np.zeros((local.shape[0], self.size))
        if index == 0:
            return out
        dim = self.dims[index - 1]
        start = self.offsets[index - 1]
        out[:, start:start + dim + 1] = local - basis_vector(dim + 1, 1)[None, :]
        return out

    def embed_point(self, p: WedgePoint) -> np.ndarray:
        if p.is_base:
            return np.zeros(self.size)
        return self.embed(p.index, p.coords)[0]

    def _in_cap(self, p: WedgePoint) -> bool:
        return not p.is_base and p.coords[0] < 0

    def _coordinate_margins(self, p: WedgePoint) -> Tuple[float, float]:
        """(margin in C, margin in the cap)"""
        if p.is_base:
            return 1.0 + self.config.epsilon, -1.0
        first = float(p.coords[0])
        return first + self.config.epsilon, -first

    def margins(self, query: WedgeQuery) -> np.ndarray:
        p, q = query
        c_p, d_p = self._coordinate_margins(p)
        c_q, d_q = self._coordinate_margins(q)
        return np.array([
            min(c_p, c_q),
            max(min(d_p, c_q), min(c_p, d_q)),
            min(d_p, d_q)
        ])

    def _to_base(self, p: WedgePoint) -> Tuple[np.ndarray, Tuple]:
        """Path from p to x0 and its piece label."""
        if p.is_base:
            return constant(np.zeros(self.size), self.samples), ("base",)
        dim = self.dims[p.index - 1]
        e1 = basis_vector(dim + 1, 1)
        if self._in_cap(p):
            e2 = basis_vector(dim + 1, 2)
            local, _ = concatenate([
                geodesic(p.coords, -e1, self.samples),
                geodesic(-e1, e2, self.samples),
                geodesic(e2, e1, self.samples)
            ])
            return self.embed(p.index, local), ("cap", p.index)
        return self.embed(p.index, geodesic(p.coords, e1, self.samples)), ("c", p.index)

    def plan(self, query: WedgeQuery) -> PathSample:
        p, q = self.query(*query)
        rule = 1 + int(self._in_cap(p)) + int(self._in_cap(q))
        outbound, p_piece = self._to_base(p)
        inbound, q_piece = self._to_base(q)
        points, params = concatenate([outbound, inbound[::-1]])
        return PathSample(points, params, rule, piece=(rule, p_piece, q_piece))

    def endpoints(self, query: WedgeQuery) -> Tuple[np.ndarray, np.ndarray]:
        p, q = query
        return self.embed_point(p), self.embed_point(q)

    def sample_query(self, rng: np.random.Generator) -> WedgeQuery:
        i = int(rng.integers(1, len(self.dims) + 1))
        p = WedgePoint(i, random_unit(rng, self.dims[i - 1] + 1))
        if self.m == 0:
            return p, WedgePoint.base()
        j = int(rng.integers(1, self.m + 1))
        q = WedgePoint(j, random_unit(rng, self.dims[j - 1] + 1))
        return p, q

    def sample_direction(self, rng: np.random.Generator, query: WedgeQuery):
        p, q = query
        return tuple(
            None if point.is_base else rng.standard_normal(len(point.coords))
            for point in (p, q)
        )

    def perturb(self, query: WedgeQuery, direction, delta: float) -> WedgeQuery:
        moved = []
        for point, d in zip(query, direction):
            if point.is_base:
                moved.append(point)
            else:
                moved.append(WedgePoint(point.index, normalize(point.coords + delta * d)))
        return moved[0], moved[1]


def plan_wedge_pair(dims: Sequence[int], m: int, p: WedgePoint, q: WedgePoint) -> PathSample:
    """Path from p in the wedge to q in the first m spheres under the three-rule planner."""
    return WedgePairPlanner(dims, m).plan((p, q))
