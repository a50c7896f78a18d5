"""
Logging configuration and utilities for the checker.

This module sets up structured logging with proper formatting,
rotation, and different log levels for various components.
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from src.core.config import LoggingSettings, config


class LoggerSetup:
    """Setup and configure logging for the application."""

    def __init__(self, settings: Optional[LoggingSettings] = None):
        self.logger = logger
        self.configure(settings or config.logging)

    def configure(self, settings: LoggingSettings):
        """Configure loguru sinks; safe to call again after the CLI loads its config."""
        # Remove default handler
        self.logger.remove()
        self.logger.configure(extra={"name": "transparency_check"})

        # Console handler on stderr; stdout and report files stay machine-readable
        self.logger.add(
            sys.stderr,
            format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
                   "<level>{level: <8}</level> | "
                   "<cyan>{extra[name]}</cyan> | "
                   "<level>{message}</level>",
            level=settings.level,
            colorize=True
        )

        if settings.file:
            log_file = Path(settings.file)
            log_file.parent.mkdir(parents=True, exist_ok=True)

            self.logger.add(
                log_file,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[name]}:{function}:{line} | {message}",
                level="DEBUG",
                rotation=settings.rotation,
                retention=settings.retention,
                encoding="utf-8"
            )

    def get_logger(self, name: Optional[str] = None):
        """Get a logger instance with optional name binding."""
        return self.logger.bind(name=name or "transparency_check")


# Global logger setup
logger_setup = LoggerSetup()


def get_logger(name: str):
    """Get a named logger instance."""
    return logger_setup.get_logger(name)
