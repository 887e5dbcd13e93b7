"""
Configuration space module for motion planners.
Provides points on spheres, wedges of spheres and real projective spaces,
sampled paths, geodesic segments, and the planner interface shared by the
sphere, wedge and projective planners.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from src.utils.config import PlannerConfig
from src.utils.errors import NotOnSphere
from src.utils.logger import get_logger

logger = get_logger(__name__)


def as_unit_vector(coords: Sequence[float], dim: int, tolerance: float = 1e-9, what: str = "point") -> np.ndarray:
    """
    Validate a unit vector in R^(dim+1).

    Raises:
        NotOnSphere: On wrong length, non-finite entries or norm off by more than tolerance
    """
    vector = np.asarray(coords, dtype=float)
    if vector.shape != (dim + 1,):
        raise NotOnSphere(f"{what} must have {dim + 1} coordinates, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise NotOnSphere(f"{what} has non-finite coordinates")
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > tolerance:
        raise NotOnSphere(f"{what} has norm {norm}, expected 1 within {tolerance}")
    return vector / norm


def random_unit(rng: np.random.Generator, size: int) -> np.ndarray:
    while True:
        v = rng.standard_normal(size)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm


def normalize(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def basis_vector(size: int, index: int) -> np.ndarray:
    """Standard basis vector e_index (1-based) of R^size."""
    e = np.zeros(size)
    e[index - 1] = 1.0
    return e


@dataclass(frozen=True)
class SpherePoint:
    """Unit vector in R^(N+1)."""

    coords: np.ndarray
    dim: int

    @classmethod
    def of(cls, coords: Sequence[float], dim: int, tolerance: float = 1e-9) -> "SpherePoint":
        return cls(as_unit_vector(coords, dim, tolerance), dim)


@dataclass(frozen=True)
class WedgePoint:
    """
    Point of a wedge of spheres: a sphere index with a point on that sphere.

    The wedge point x0 is e1 on every sphere; its canonical form has index 0
    and no coordinates.
    """

    index: int
    coords: Optional[np.ndarray] = None

    @property
    def is_base(self) -> bool:
        return self.index == 0

    @classmethod
    def base(cls) -> "WedgePoint":
        return cls(0, None)


def canonical_sign(v: np.ndarray, threshold: float = 1e-12) -> np.ndarray:
    """Representative whose first coordinate above the threshold is positive."""
    for x in v:
        if abs(x) > threshold:
            return v if x > 0 else -v
    return v


@dataclass(frozen=True)
class ProjectivePoint:
    """Line through the origin, stored as its canonical unit representative."""

    rep: np.ndarray

    @classmethod
    def of(cls, coords: Sequence[float], dim: int, tolerance: float = 1e-9, threshold: float = 1e-12) -> "ProjectivePoint":
        vector = np.asarray(coords, dtype=float)
        if vector.shape != (dim + 1,) or not np.all(np.isfinite(vector)):
            raise NotOnSphere(f"Projective point must have {dim + 1} finite coordinates")
        norm = float(np.linalg.norm(vector))
        if norm <= threshold:
            raise NotOnSphere("The zero vector does not span a line")
        return cls(canonical_sign(vector / norm, threshold))


def projective_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise min(|a - b|, |a + b|)."""
    return np.minimum(np.linalg.norm(a - b, axis=-1), np.linalg.norm(a + b, axis=-1))


@dataclass
class PathSample:
    """A sampled path on [0,1] produced by one rule of a planner."""

    points: np.ndarray
    params: np.ndarray
    rule: int
    piece: Hashable = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "t": [float(t) for t in self.params],
            "points": [[float(x) for x in row] for row in self.points]
        }


def geodesic(a: np.ndarray, b: np.ndarray, samples: int) -> np.ndarray:
    """
    Great-circle arc from a to b, sampled at `samples` points including both ends.

    a and b must not be antipodal.
    """
    t = np.linspace(0.0, 1.0, samples)
    cos_theta = float(np.clip(np.dot(a, b), -1.0, 1.0))
    theta = float(np.arccos(cos_theta))
    if theta < 1e-12:
        return np.repeat(a[None, :], samples, axis=0)
    direction = b - cos_theta * a
    direction = direction / np.linalg.norm(direction)
    arc = np.cos(t * theta)[:, None] * a[None, :] + np.sin(t * theta)[:, None] * direction[None, :]
    arc[-1] = b
    return arc


def constant(point: np.ndarray, samples: int) -> np.ndarray:
    return np.repeat(point[None, :], samples, axis=0)


def concatenate(segments: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Join segments end to start, dropping repeated joints, reparametrized to [0,1].

    Returns:
        Tuple of (points, params)
    """
    pieces: List[np.ndarray] = [segments[0]]
    for segment in segments[1:]:
        pieces.append(segment[1:])
    points = np.vstack(pieces)
    return points, np.linspace(0.0, 1.0, len(points))


class MotionPlanner(ABC):
    """
    A motion planner for a pair (X, Y): open rule regions with a path
    section over each.

    Queries are (start, goal) pairs in the planner's own representation.
    """

    def __init__(self, config: Optional[PlannerConfig] = None):
        self.config = config or PlannerConfig()
        self.config.validate()

    @property
    @abstractmethod
    def rule_count(self) -> int:
        """Number of rules."""

    @abstractmethod
    def margins(self, query) -> np.ndarray:
        """Per-rule membership margins; rule i applies when margin i is positive."""

    @abstractmethod
    def plan(self, query) -> PathSample:
        """Path from the start to the goal of the query."""

    @abstractmethod
    def endpoints(self, query) -> Tuple[np.ndarray, np.ndarray]:
        """Start and goal in path coordinates."""

    @abstractmethod
    def sample_query(self, rng: np.random.Generator):
        """Random query."""

    @abstractmethod
    def sample_direction(self, rng: np.random.Generator, query):
        """Random perturbation direction for a query."""

    @abstractmethod
    def perturb(self, query, direction, delta: float):
        """Query moved by delta along a direction."""

    def point_distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.linalg.norm(a - b, axis=-1)

    def path_distance(self, first: PathSample, second: PathSample) -> float:
        """Sup distance between two paths sampled on the same grid."""
        return float(np.max(self.point_distance(first.points, second.points)))

    def endpoint_error(self, query, path: PathSample) -> float:
        start, goal = self.endpoints(query)
        return float(max(
            self.point_distance(path.points[0], start),
            self.point_distance(path.points[-1], goal)
        ))

    @property
    def samples(self) -> int:
        return self.config.samples_per_segment
