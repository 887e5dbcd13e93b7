"""
Projective pair planner module.
Provides bilinear maps with exact rational coefficients, the polynomial and
quaternion witnesses, diagonal positivization, sampled non-singularity checks,
and the k-rule planner for (RP^n, RP^m) built from a non-singular map into R^k.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational
from sympy.algebras.quaternion import Quaternion

from src.planners.spaces import (
    MotionPlanner, PathSample, ProjectivePoint, canonical_sign, constant, geodesic, normalize,
    projective_distance, random_unit
)
from src.utils.config import PlannerConfig
from src.utils.errors import (
    NoRuleApplies, NotNonsingular, NotOnSphere, PositivizationFailed, PreconditionFailed
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class BilinearMap:
    """
    f: R^(n+1) x R^(m+1) -> R^k with f(x,y)_r = Σ c[i][j][r] x_i y_j.

    Coefficients are exact Fractions held in an object array; evaluation uses
    a float copy.
    """

    n: int
    m: int
    k: int
    coefficients: np.ndarray
    origin: str
    certified: bool = False
    positivized: bool = False

    def __post_init__(self):
        if self.coefficients.shape != (self.n + 1, self.m + 1, self.k):
            raise PreconditionFailed(
                f"Coefficient shape {self.coefficients.shape} does not match ({self.n + 1}, {self.m + 1}, {self.k})"
            )
        object.__setattr__(self, "_floats", self.coefficients.astype(float))

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self.n + 1, self.m + 1, self.k

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Evaluate on vectors or on batches of row vectors."""
        return np.einsum("...i,...j,ijr->...r", x, y, self._floats)

    def exact(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return tuple(
            sum((self.coefficients[i, j, r] * x[i] * y[j]
                 for i in range(self.n + 1) for j in range(self.m + 1)), Fraction(0))
            for r in range(self.k)
        )

    def diagonal_form(self, functional: Sequence[Fraction]) -> Matrix:
        """Symmetric matrix of u -> λ(f((u,0),u)) on R^(m+1)."""
        size = self.m + 1
        entries = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(size):
                value = sum((Fraction(functional[r]) * self.coefficients[i, j, r] for r in range(self.k)), Fraction(0))
                entries[i][j] += value / 2
                entries[j][i] += value / 2
        return Matrix([[Rational(e.numerator, e.denominator) for e in row] for row in entries])


def _fraction_array(shape: Tuple[int, ...]) -> np.ndarray:
    array = np.empty(shape, dtype=object)
    array.fill(Fraction(0))
    return array


def build_polymul_map(n: int, m: int) -> BilinearMap:
    """
    Coefficient convolution R^(n+1) x R^(m+1) -> R^(n+m+1).

    Real polynomial multiplication has no zero divisors, so the map is
    non-singular.
    """
    if n < 0 or m < 0:
        raise PreconditionFailed(f"Polynomial degrees must be non-negative, got ({n}, {m})")
    coefficients = _fraction_array((n + 1, m + 1, n + m + 1))
    for i in range(n + 1):
        for j in range(m + 1):
            coefficients[i, j, i + j] = Fraction(1)
    return BilinearMap(n, m, n + m + 1, coefficients, origin="polynomial multiplication", certified=True)


def build_quaternion_map(n: int = 3, m: int = 2) -> BilinearMap:
    """
    f(q, r) = q·r̄ on the first n+1 and m+1 basis quaternions, into R^4.

    |q r̄| = |q||r| makes the map non-singular, and f(u,u) = |u|² is positive
    in the first coordinate.
    """
    if not 0 <= m <= n <= 3:
        raise PreconditionFailed(f"Quaternion map needs 0 <= m <= n <= 3, got ({n}, {m})")
    units = [
        Quaternion(1, 0, 0, 0), Quaternion(0, 1, 0, 0),
        Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
    ]
    coefficients = _fraction_array((n + 1, m + 1, 4))
    for i in range(n + 1):
        for j in range(m + 1):
            r = units[j]
            product = units[i] * Quaternion(r.a, -r.b, -r.c, -r.d)
            for slot, value in enumerate((product.a, product.b, product.c, product.d)):
                coefficients[i, j, slot] = Fraction(int(value))
    return BilinearMap(n, m, 4, coefficients, origin="quaternion product q·r̄", certified=True)


def check_nonsingular(f: BilinearMap, samples: int = 100_000, seed: int = 0, threshold: float = 1e-12) -> float:
    """
    Minimum of |f(x,y)| / (|x||y|) over random nonzero pairs.

    Raises:
        NotNonsingular: If the minimum does not exceed the threshold
    """
    rng = np.random.default_rng(seed)
    worst = np.inf
    remaining = samples
    while remaining > 0:
        batch = min(remaining, 10_000)
        x = rng.standard_normal((batch, f.n + 1))
        y = rng.standard_normal((batch, f.m + 1))
        ratio = np.linalg.norm(f(x, y), axis=1) / (np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1))
        worst = min(worst, float(np.min(ratio)))
        remaining -= batch
    if worst <= threshold:
        logger.error(f"Map {f.origin} vanishes on sampled pairs (min ratio {worst:.3e})")
        raise NotNonsingular(f"{f.origin} is singular on sampled pairs (min |f(x,y)|/(|x||y|) = {worst:.3e})")
    logger.debug(f"Non-singularity check for {f.origin}: min ratio {worst:.6f} over {samples} pairs")
    return worst


def _positive_functional(f: BilinearMap, samples: int, seed: int) -> Optional[Tuple[Fraction, ...]]:
    unit = tuple(Fraction(int(r == 0)) for r in range(f.k))
    if f.diagonal_form(unit).is_positive_definite:
        return None

    candidates = []
    if f.origin == "polynomial multiplication":
        # ∫_0^1 u(t)^2 dt on coefficient vectors
        candidates.append(tuple(Fraction(1, r + 1) for r in range(f.k)))

    rng = np.random.default_rng(seed)
    u = rng.standard_normal((samples, f.m + 1))
    padded = np.zeros((samples, f.n + 1))
    padded[:, :f.m + 1] = u
    images = f(padded, u)
    images /= np.linalg.norm(images, axis=1, keepdims=True)
    mean = images.mean(axis=0)
    if np.linalg.norm(mean) > 1e-9:
        mean = mean / np.max(np.abs(mean))
        candidates.append(tuple(Fraction(float(x)).limit_denominator(10 ** 6) for x in mean))

    for functional in candidates:
        if f.diagonal_form(functional).is_positive_definite:
            return functional
    raise PositivizationFailed(f"No functional found that is positive on the diagonal image of {f.origin}")


def diagonal_positivize(f: BilinearMap, samples: int = 10_000, seed: int = 0) -> BilinearMap:
    """
    Post-compose f with an invertible map whose first row is positive on f((u,0),u), u ≠ 0.

    Positivity is certified exactly via positive definiteness of the diagonal
    quadratic form; non-certified maps are first checked for non-singularity.

    Raises:
        PreconditionFailed: If m > n
        NotNonsingular: If a non-certified map vanishes on sampled pairs
        PositivizationFailed: If no positive functional is found
    """
    if f.m > f.n:
        raise PreconditionFailed(f"Diagonal positivization needs m <= n, got ({f.n}, {f.m})")
    if not f.certified:
        check_nonsingular(f, samples=samples, seed=seed)

    functional = _positive_functional(f, samples, seed)
    if functional is None:
        logger.debug(f"{f.origin} is already positive on the diagonal")
        return BilinearMap(f.n, f.m, f.k, f.coefficients, f.origin, f.certified, positivized=True)

    pivot = next(r for r, value in enumerate(functional) if value != 0)
    rows = [functional] + [
        tuple(Fraction(int(c == r)) for c in range(f.k)) for r in range(f.k) if r != pivot
    ]
    coefficients = _fraction_array(f.coefficients.shape)
    for i in range(f.n + 1):
        for j in range(f.m + 1):
            for s, row in enumerate(rows):
                coefficients[i, j, s] = sum((row[r] * f.coefficients[i, j, r] for r in range(f.k)), Fraction(0))

    logger.info(f"Positivized {f.origin} with first functional {[str(x) for x in functional]}")
    return BilinearMap(f.n, f.m, f.k, coefficients, f"{f.origin}, positivized", f.certified, positivized=True)


ProjectiveQuery = Tuple[np.ndarray, np.ndarray]


class ProjectivePairPlanner(MotionPlanner):
    """
    k rules for (RP^n, RP^m) from a diagonal-positive non-singular map into R^k.

    The pair (L, L') is served by the rule i maximizing |f_i(u, u')|. The path
    rotates L to L' in their common plane, from u toward the representative
    w of L' with f_i(u, w) > 0. Equal lines take rule 1 with the constant path.

    Pairs within diagonal_band of the diagonal (chord distance) also take
    rule 1: there f_1(u, w) >= λ/2 for the representative w nearest u, where
    λ is the least eigenvalue of the diagonal form of f_1, so the path is
    short. Outside the band no chosen representative is close to -u.
    """

    def __init__(self, f: BilinearMap, config: Optional[PlannerConfig] = None):
        super().__init__(config)
        if not f.positivized:
            f = diagonal_positivize(f)
        self.f = f
        self.n = f.n
        self.m = f.m
        first = f._floats[:, :, 0]
        square = first[: f.m + 1, :]
        smallest = float(np.linalg.eigvalsh((square + square.T) / 2).min())
        scale = float(np.linalg.norm(first, 2))
        self.diagonal_band = 0.5 * smallest / scale if smallest > 0 and scale > 0 else 0.0
        logger.debug(f"ProjectivePairPlanner initialized with {f.k} rules from {f.origin}")

    @property
    def rule_count(self) -> int:
        return self.f.k

    def query(self, start: Sequence[float], goal: Sequence[float]) -> ProjectiveQuery:
        threshold = self.config.zero_threshold
        u = ProjectivePoint.of(start, self.n, threshold=threshold).rep
        goal = np.asarray(goal, dtype=float)
        if goal.shape == (self.n + 1,):
            if np.any(np.abs(goal[self.m + 1:]) > self.config.unit_tolerance * max(1.0, np.linalg.norm(goal))):
                raise NotOnSphere(f"Goal line is not inside the standard RP^{self.m}")
            goal = goal[: self.m + 1]
        v = ProjectivePoint.of(goal, self.m, threshold=threshold).rep
        return u, v

    def _padded(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n + 1)
        out[: self.m + 1] = v
        return out

    def _on_diagonal(self, query: ProjectiveQuery) -> bool:
        u, v = query
        return float(projective_distance(u, self._padded(v))) <= self.config.zero_threshold

    def _chord(self, query: ProjectiveQuery) -> float:
        u, v = query
        return float(projective_distance(u / np.linalg.norm(u), self._padded(v) / np.linalg.norm(v)))

    def margins(self, query: ProjectiveQuery) -> np.ndarray:
        u, v = query
        return np.abs(self.f(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))

    def rule_for(self, query: ProjectiveQuery) -> int:
        if self._on_diagonal(query) or self._chord(query) < self.diagonal_band:
            return 1
        margins = self.margins(query)
        best = int(np.argmax(margins))
        if margins[best] <= self.config.zero_threshold:
            raise NoRuleApplies(f"No rule serves the query: all |f_i(u,u')| vanish for {self.f.origin}")
        return best + 1

    def plan(self, query: ProjectiveQuery) -> PathSample:
        u, v = query
        rule = self.rule_for(query)
        if self._on_diagonal(query):
            points = constant(u, self.samples)
            return PathSample(points, np.linspace(0.0, 1.0, self.samples), 1, piece=("diagonal",))
        sign = 1.0 if self.f(u, v)[rule - 1] > 0 else -1.0
        target = sign * self._padded(v)
        points = geodesic(u, target, self.samples)
        return PathSample(points, np.linspace(0.0, 1.0, self.samples), rule, piece=(rule,))

    def endpoints(self, query: ProjectiveQuery) -> Tuple[np.ndarray, np.ndarray]:
        u, v = query
        return u, self._padded(v)

    def point_distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return projective_distance(a, b)

    def sample_query(self, rng: np.random.Generator) -> ProjectiveQuery:
        threshold = self.config.zero_threshold
        return (
            canonical_sign(random_unit(rng, self.n + 1), threshold),
            canonical_sign(random_unit(rng, self.m + 1), threshold)
        )

    def sample_direction(self, rng: np.random.Generator, query: ProjectiveQuery):
        return rng.standard_normal(self.n + 1), rng.standard_normal(self.m + 1)

    def perturb(self, query: ProjectiveQuery, direction, delta: float) -> ProjectiveQuery:
        (u, v), (du, dv) = query, direction
        return normalize(u + delta * du), normalize(v + delta * dv)


def plan_projective_pair(f: BilinearMap, start: Sequence[float], goal: Sequence[float]) -> PathSample:
    """Path between lines of RP^n and RP^m under the planner built from f."""
    planner = ProjectivePairPlanner(f)
    return planner.plan(planner.query(start, goal))
