"""
Shared pytest configuration: a deterministic hypothesis profile and common fixtures.
"""

import pytest
from hypothesis import HealthCheck, settings

from src.combinatorics.lengths import LengthVector

settings.register_profile(
    "tcpair",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much]
)
settings.load_profile("tcpair")


@pytest.fixture
def fibonacci_lengths() -> LengthVector:
    return LengthVector.parse("1,1,2,3,5,7")


def _rp_pair_document(n: int, m: int, image_exponent: int = 1) -> dict:
    return {
        "source": {
            "field": "F2",
            "generators": [{"name": "x", "degree": 1}],
            "relations": [[{"coeff": "1", "monomial": {"x": n + 1}}]],
            "top_degree": n
        },
        "target": {
            "field": "F2",
            "generators": [{"name": "y", "degree": 1}],
            "relations": [[{"coeff": "1", "monomial": {"y": m + 1}}]],
            "top_degree": m
        },
        "hom": {"images": {"x": [{"coeff": "1", "monomial": {"y": image_exponent}}]}}
    }


@pytest.fixture
def rp_pair_document():
    """Builder for the pair specification of (RP^n, RP^m) over F2."""
    return _rp_pair_document
