"""
Planner verification module.
Provides sampling checks of motion planners: every query is covered by a
rule, paths start and end at the query, and nearby queries served by the same
rule receive nearby paths.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from src.planners.spaces import MotionPlanner
from src.utils.config import VerificationConfig
from src.utils.errors import NoRuleApplies, PlannerVerificationFailed
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class VerificationRecord:
    """Outcome of a sampling verification run."""

    samples: int
    cover_failures: int
    endpoint_max_err: float
    continuity_defect: float
    seed: int
    delta: float

    def passed(self, endpoint_tolerance: float = 1e-6) -> bool:
        return self.cover_failures == 0 and self.endpoint_max_err <= endpoint_tolerance

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.samples,
            "cover_failures": self.cover_failures,
            "endpoint_max_err": self.endpoint_max_err,
            "continuity_defect": self.continuity_defect,
            "seed": self.seed
        }


def _run_chunk(
    planner: MotionPlanner,
    seed: np.random.SeedSequence,
    count: int,
    deltas: Sequence[float]
) -> Tuple[int, float, List[float]]:
    """Cover failures, worst endpoint error and per-delta continuity defects of one chunk."""
    rng = np.random.default_rng(seed)
    failures = 0
    endpoint = 0.0
    defects = [0.0] * len(deltas)
    for _ in range(count):
        query = planner.sample_query(rng)
        direction = planner.sample_direction(rng, query)
        if np.max(planner.margins(query)) <= 0:
            failures += 1
            continue
        try:
            path = planner.plan(query)
        except NoRuleApplies:
            failures += 1
            continue
        endpoint = max(endpoint, planner.endpoint_error(query, path))
        for index, delta in enumerate(deltas):
            nearby = planner.perturb(query, direction, delta)
            try:
                other = planner.plan(nearby)
            except NoRuleApplies:
                continue
            if other.piece == path.piece:
                defects[index] = max(defects[index], planner.path_distance(path, other))
    return failures, endpoint, defects


def _run(
    planner: MotionPlanner,
    samples: int,
    seed: int,
    deltas: Sequence[float],
    config: VerificationConfig
) -> Tuple[int, float, List[float]]:
    chunks = [config.chunk_size] * (samples // config.chunk_size)
    if samples % config.chunk_size:
        chunks.append(samples % config.chunk_size)
    seeds = np.random.SeedSequence(seed).spawn(len(chunks))

    def work(args):
        child, count = args
        return _run_chunk(planner, child, count, deltas)

    jobs = list(zip(seeds, chunks))
    if config.threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            results = executor.map(work, jobs)
            results = list(tqdm(results, total=len(jobs), desc="Verifying", disable=not config.show_progress))
    else:
        results = [work(job) for job in tqdm(jobs, desc="Verifying", disable=not config.show_progress)]

    failures = sum(r[0] for r in results)
    endpoint = max((r[1] for r in results), default=0.0)
    defects = [max((r[2][i] for r in results), default=0.0) for i in range(len(deltas))]
    return failures, endpoint, defects


def verify_planner(
    planner: MotionPlanner,
    samples: Optional[int] = None,
    delta: Optional[float] = None,
    seed: Optional[int] = None,
    config: Optional[VerificationConfig] = None
) -> VerificationRecord:
    """
    Sample queries and check cover, endpoints and continuity.

    Results depend only on the seed, not on the thread count: queries are
    drawn in fixed chunks, each from its own spawned seed.

    Args:
        planner: Planner under test
        samples: Number of queries (default from config)
        delta: Perturbation size for the continuity check
        seed: Base seed
        config: Verification configuration

    Returns:
        VerificationRecord
    """
    config = config or VerificationConfig()
    config.validate()
    samples = samples if samples is not None else config.samples
    delta = delta if delta is not None else config.delta
    seed = seed if seed is not None else config.seed

    failures, endpoint, defects = _run(planner, samples, seed, [delta], config)
    record = VerificationRecord(samples, failures, endpoint, defects[0], seed, delta)
    logger.info(
        f"{type(planner).__name__}: {samples} samples, {failures} cover failures, "
        f"endpoint error {endpoint:.2e}, continuity defect {defects[0]:.4f} at δ={delta}"
    )
    return record


def continuity_profile(
    planner: MotionPlanner,
    samples: Optional[int] = None,
    delta: Optional[float] = None,
    halvings: int = 3,
    seed: Optional[int] = None,
    config: Optional[VerificationConfig] = None
) -> List[float]:
    """
    Continuity defects for δ, δ/2, ..., δ/2^halvings on the same queries and directions.
    """
    config = config or VerificationConfig()
    config.validate()
    samples = samples if samples is not None else config.samples
    delta = delta if delta is not None else config.delta
    seed = seed if seed is not None else config.seed

    deltas = [delta / 2 ** h for h in range(halvings + 1)]
    _, _, defects = _run(planner, samples, seed, deltas, config)
    logger.debug(f"Continuity profile {[f'{d:.4f}' for d in defects]} for deltas {deltas}")
    return defects


def require_passed(record: VerificationRecord, endpoint_tolerance: float = 1e-6) -> None:
    """
    Raises:
        PlannerVerificationFailed: If any query was uncovered or an endpoint was off
    """
    if not record.passed(endpoint_tolerance):
        raise PlannerVerificationFailed(
            f"Planner verification failed: {record.cover_failures} cover failures, "
            f"endpoint error {record.endpoint_max_err:.2e} (tolerance {endpoint_tolerance:.0e})"
        )
