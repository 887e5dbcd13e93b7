"""
Tests for configuration defaults, validation and environment overrides.
"""

import pytest

from src.utils.config import (
    AppConfig, LengthConfig, PlannerConfig, SearchConfig, VerificationConfig, get_default_config
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv("TCPAIR_THREADS", raising=False)
    monkeypatch.delenv("TCPAIR_LOG_LEVEL", raising=False)


class TestDefaults:

    def test_values(self):
        config = get_default_config()
        assert config.lengths.max_polygon_size == 12
        assert config.verification.samples == 10_000
        assert config.verification.seed == 0
        assert config.planner.epsilon == 0.5
        assert config.search.threads == 1
        assert config.log_level == "WARNING"

    def test_thread_override_reaches_search_and_verification(self):
        config = AppConfig(threads=4)
        assert config.search.threads == config.verification.threads == 4


class TestEnvironment:

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("TCPAIR_THREADS", "3")
        assert SearchConfig().threads == 3
        assert VerificationConfig().threads == 3

    def test_threads_are_at_least_one(self, monkeypatch):
        monkeypatch.setenv("TCPAIR_THREADS", "-2")
        assert SearchConfig().threads == 1

    def test_bad_thread_value(self, monkeypatch):
        monkeypatch.setenv("TCPAIR_THREADS", "many")
        with pytest.raises(ValueError):
            SearchConfig()

    def test_log_level_from_environment(self, monkeypatch):
        monkeypatch.setenv("TCPAIR_LOG_LEVEL", "DEBUG")
        assert AppConfig().log_level == "DEBUG"
        assert AppConfig(log_level="ERROR").log_level == "ERROR"


class TestValidation:

    @pytest.mark.parametrize("config", [
        LengthConfig(max_enumeration_size=2),
        LengthConfig(max_polygon_size=3),
        LengthConfig(max_enumeration_size=10, max_polygon_size=12),
        SearchConfig(max_factors=0),
        SearchConfig(threads=0),
        PlannerConfig(epsilon=1.0),
        PlannerConfig(samples_per_segment=1),
        PlannerConfig(zero_threshold=0.0),
        VerificationConfig(samples=0),
        VerificationConfig(chunk_size=0),
        VerificationConfig(delta=0.0),
        VerificationConfig(endpoint_tolerance=-1.0),
        VerificationConfig(threads=0)
    ])
    def test_rejects(self, config):
        with pytest.raises(ValueError):
            config.validate()

    def test_app_config_validates_overrides(self):
        with pytest.raises(ValueError):
            AppConfig(threads=0)
