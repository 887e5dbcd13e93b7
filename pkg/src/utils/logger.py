"""
Logging configuration module for tcpair.
Provides centralized logging with a stderr console handler and an optional dated log file.
"""

import logging
import os
import sys
from pathlib import Path
from datetime import datetime
from typing import Dict, Optional

from dotenv import load_dotenv


class LoggerConfig:
    """Manages application-wide logging configuration."""

    # Log format templates
    DETAILED_FORMAT = (
        '%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d | %(message)s'
    )
    SIMPLE_FORMAT = '%(asctime)s | %(levelname)-8s | %(message)s'
    CONSOLE_FORMAT = '%(levelname)-8s | %(name)s | %(message)s'

    # Date format
    DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

    def __init__(self, log_dir: Optional[str] = None, log_level: str = 'WARNING'):
        """
        Initialize logger configuration.

        Args:
            log_dir: Directory for dated log files; None disables file logging
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        self.log_dir = Path(log_dir) if log_dir else None
        self.log_level = getattr(logging, log_level.upper(), logging.WARNING)
        self._loggers: Dict[str, logging.Logger] = {}
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def setup_logger(
        self,
        name: str = __name__,
        console_output: bool = True,
        file_output: bool = True,
        detailed_console: bool = False
    ) -> logging.Logger:
        """
        Set up and configure a logger instance.

        Standard output is reserved for reports, so the console handler
        writes to stderr.

        Args:
            name: Logger name (typically __name__ of the calling module)
            console_output: Enable console (stderr) logging
            file_output: Enable file logging when a log directory is configured
            detailed_console: Use detailed format for console output

        Returns:
            Configured logger instance
        """
        logger = logging.getLogger(name)
        logger.setLevel(self.log_level)

        # Remove existing handlers to avoid duplicates
        logger.handlers.clear()

        if console_output:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(self.log_level)
            console_format = self.DETAILED_FORMAT if detailed_console else self.CONSOLE_FORMAT
            console_handler.setFormatter(logging.Formatter(console_format, self.DATE_FORMAT))
            logger.addHandler(console_handler)

        if file_output and self.log_dir is not None:
            file_handler = logging.FileHandler(self._get_log_filename(), encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)  # Always log DEBUG to file
            file_handler.setFormatter(logging.Formatter(self.DETAILED_FORMAT, self.DATE_FORMAT))
            logger.addHandler(file_handler)

        # Prevent propagation to root logger
        logger.propagate = False

        self._loggers[name] = logger
        return logger

    def set_level(self, log_level: str) -> None:
        """
        Change the level of every logger handed out so far.

        Args:
            log_level: Logging level name
        """
        self.log_level = getattr(logging, log_level.upper(), logging.WARNING)
        for logger in self._loggers.values():
            logger.setLevel(self.log_level)
            for handler in logger.handlers:
                if not isinstance(handler, logging.FileHandler):
                    handler.setLevel(self.log_level)

    def _get_log_filename(self) -> Path:
        """Dated log file path."""
        timestamp = datetime.now().strftime('%Y%m%d')
        return self.log_dir / f'tcpair_{timestamp}.log'


# Global logger instance factory
_logger_config: Optional[LoggerConfig] = None


def _get_config() -> LoggerConfig:
    global _logger_config

    if _logger_config is None:
        load_dotenv()
        _logger_config = LoggerConfig(
            log_dir=os.environ.get('TCPAIR_LOG_DIR') or None,
            log_level=os.environ.get('TCPAIR_LOG_LEVEL', 'WARNING')
        )
    return _logger_config


def get_logger(
    name: str = __name__,
    console_output: bool = True,
    file_output: bool = True
) -> logging.Logger:
    """
    Get a configured logger instance (convenience function).

    Args:
        name: Logger name (typically __name__ of the calling module)
        console_output: Enable console logging
        file_output: Enable file logging

    Returns:
        Configured logger instance

    Example:
        >>> from src.utils.logger import get_logger
        >>> logger = get_logger(__name__)
        >>> logger.info("Ring construction started")
    """
    return _get_config().setup_logger(
        name=name,
        console_output=console_output,
        file_output=file_output
    )


def set_log_level(level: str) -> None:
    """
    Re-level all tcpair loggers.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    _get_config().set_level(level)
