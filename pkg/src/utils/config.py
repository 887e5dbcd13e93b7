"""
Configuration module for tcpair.
Centralizes search, planner, verification and enumeration settings and their defaults.
"""

import os
from typing import Optional
from dataclasses import dataclass, field

from dotenv import load_dotenv


def _env_threads() -> int:
    """Worker cap from TCPAIR_THREADS (default 1)."""
    load_dotenv()
    raw = os.environ.get("TCPAIR_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"TCPAIR_THREADS must be an integer, got {raw!r}")


@dataclass
class LengthConfig:
    """Ceilings for length-vector enumeration and polygon rings."""

    # Subset enumeration over 2^n masks
    max_enumeration_size: int = 24

    # Largest polygon for which the cohomology ring is built
    max_polygon_size: int = 12

    def validate(self) -> None:
        """Validate configuration parameters."""
        if self.max_enumeration_size < 3:
            raise ValueError("max_enumeration_size must be at least 3")
        if not 4 <= self.max_polygon_size <= self.max_enumeration_size:
            raise ValueError("max_polygon_size must lie between 4 and max_enumeration_size")


@dataclass
class SearchConfig:
    """Configuration for the zero-divisor cup-length search."""

    # None selects the default cap derived from the tensor ring
    max_factors: Optional[int] = None

    # Worker threads for top-level DFS branches
    threads: int = field(default_factory=_env_threads)

    def validate(self) -> None:
        """Validate configuration parameters."""
        if self.max_factors is not None and self.max_factors < 1:
            raise ValueError("max_factors must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class PlannerConfig:
    """Configuration for motion planner construction."""

    # Sphere cover overlap parameter
    epsilon: float = 0.5

    # Samples per concatenated path segment
    samples_per_segment: int = 64

    # Threshold below which a coordinate counts as zero
    zero_threshold: float = 1e-12

    # Allowed deviation from unit norm for input points
    unit_tolerance: float = 1e-9

    def validate(self) -> None:
        """Validate configuration parameters."""
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must be strictly between 0 and 1")
        if self.samples_per_segment < 2:
            raise ValueError("samples_per_segment must be at least 2")
        if self.zero_threshold <= 0 or self.unit_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class VerificationConfig:
    """Configuration for sampling verification of planners and bilinear maps."""

    samples: int = 10_000
    seed: int = 0
    delta: float = 0.05
    endpoint_tolerance: float = 1e-6
    nonsingular_samples: int = 100_000
    chunk_size: int = 1_000
    threads: int = field(default_factory=_env_threads)
    show_progress: bool = False

    def validate(self) -> None:
        """Validate configuration parameters."""
        if self.samples < 1 or self.nonsingular_samples < 1:
            raise ValueError("sample counts must be positive")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be positive")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.endpoint_tolerance <= 0:
            raise ValueError("endpoint_tolerance must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


class AppConfig:
    """Main application configuration aggregator."""

    def __init__(
        self,
        log_level: Optional[str] = None,
        threads: Optional[int] = None
    ):
        """
        Initialize application configuration.

        Args:
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL);
                defaults to TCPAIR_LOG_LEVEL or WARNING
            threads: Worker cap overriding TCPAIR_THREADS
        """
        load_dotenv()
        self.lengths = LengthConfig()
        self.search = SearchConfig()
        self.planner = PlannerConfig()
        self.verification = VerificationConfig()
        self.log_level = log_level or os.environ.get("TCPAIR_LOG_LEVEL", "WARNING")

        if threads is not None:
            self.search.threads = threads
            self.verification.threads = threads

        # Validate configuration
        self.lengths.validate()
        self.search.validate()
        self.planner.validate()
        self.verification.validate()


# Convenience function to get default configuration
def get_default_config(log_level: Optional[str] = None, threads: Optional[int] = None) -> AppConfig:
    """
    Get default application configuration.

    Args:
        log_level: Logging level
        threads: Worker cap

    Returns:
        AppConfig instance with default settings
    """
    return AppConfig(log_level=log_level, threads=threads)
