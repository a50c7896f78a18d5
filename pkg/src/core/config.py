"""
Configuration management for the referential transparency translation checker.

This module handles loading and managing configuration from the YAML
settings file, environment variables, and default settings.
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator

try:
    from pydantic_settings import BaseSettings, SettingsConfigDict
except ImportError:  # pragma: no cover
    from pydantic import BaseSettings
    SettingsConfigDict = dict

from src.core.exceptions import ConfigurationError
from src.core.models import (
    DEFAULT_STOPWORDS, FilterConfig, PunctuationPolicy, TokenizationMode, TokenizationScheme
)

# Load environment variables
load_dotenv()

DEFAULT_CONFIG_PATH = "config/settings.yaml"


class AppConfig(BaseSettings):
    """Application information."""
    name: str = Field(default="Referential Transparency Translation Checker")
    version: str = Field(default="1.0")


class PipelineSettings(BaseSettings):
    """Detection pipeline settings."""
    model_config = SettingsConfigDict(env_prefix="RTI_PIPELINE_")

    threshold: int = Field(default=2, ge=0)
    max_in_flight: int = Field(default=4, ge=1)
    source_language: str = Field(default="en", min_length=1)
    target_language: str = Field(default="zh", min_length=1)


class FilterSettings(BaseSettings):
    """RTI filter settings."""
    model_config = SettingsConfigDict(env_prefix="RTI_FILTER_")

    max_words: int = Field(default=10, ge=1)
    min_content_words: int = Field(default=3, ge=1)
    stopwords_file: Optional[str] = Field(default="config/stopwords.txt")


class TokenizationSettings(BaseModel):
    """Tokenization mode per target language, with a fallback."""
    languages: Dict[str, TokenizationMode] = Field(default_factory=lambda: {
        "zh": TokenizationMode(
            scheme=TokenizationScheme.PER_CHARACTER,
            punctuation_policy=PunctuationPolicy.STRIP
        ),
    })
    default: TokenizationMode = Field(default_factory=TokenizationMode)

    def mode_for(self, language: str) -> TokenizationMode:
        if language in self.languages:
            return self.languages[language]
        # zh-CN falls back to zh
        base = language.split("-")[0]
        return self.languages.get(base, self.default)


class RestSettings(BaseModel):
    """Template-driven REST translation adapter."""
    provider_id: str = Field(default="rest")
    url_template: str = Field(default="")
    method: str = Field(default="POST")
    query_template: Dict[str, str] = Field(default_factory=dict)
    body_template: Dict[str, Any] = Field(default_factory=dict)
    headers_template: Dict[str, str] = Field(default_factory=dict)
    response_path: str = Field(default="translation")
    api_key_env: str = Field(default="TRANSLATION_API_KEY")
    timeout: float = Field(default=30.0, gt=0)
    max_attempts: int = Field(default=3, ge=1)
    backoff_seconds: float = Field(default=1.0, ge=0)

    @field_validator("method")
    @classmethod
    def _upper_method(cls, value: str) -> str:
        return value.upper()

    def api_key(self) -> Optional[str]:
        """Read the API key from the configured environment variable."""
        return os.getenv(self.api_key_env)


class MockSettings(BaseModel):
    """Compositional mock translator."""
    dictionary_path: str = Field(default="data/mock/en_zh_dictionary.json")
    faults_path: Optional[str] = Field(default=None)


class TranslationSettings(BaseSettings):
    """Translation gateway settings."""
    model_config = SettingsConfigDict(env_prefix="RTI_TRANSLATION_")

    backend: str = Field(default="replay")
    backend_id: Optional[str] = Field(default=None)
    cache_path: str = Field(default="data/cache/replay_cache.json")
    replay_only: bool = Field(default=False)
    rest: RestSettings = Field(default_factory=RestSettings)
    mock: MockSettings = Field(default_factory=MockSettings)

    @field_validator("backend")
    @classmethod
    def _known_backend(cls, value: str) -> str:
        if value not in ("replay", "rest", "mock"):
            raise ValueError(f"unknown backend {value!r} (expected replay, rest or mock)")
        return value

    def resolved_backend_id(self) -> str:
        """Backend id used for cache keys and issue ids.

        For ``mock`` without an explicit id this is only the family name; the
        backend factory replaces it with a fingerprint of the dictionary and
        fault set.
        """
        if self.backend_id:
            return self.backend_id
        if self.backend == "rest":
            return self.rest.provider_id
        if self.backend == "mock":
            return "mock"
        return "recorded"


class LoggingSettings(BaseSettings):
    """Logging settings."""
    model_config = SettingsConfigDict(env_prefix="RTI_LOG_")

    level: str = Field(default="INFO")
    file: Optional[str] = Field(default="./logs/transparency_check.log")
    rotation: str = Field(default="1 day")
    retention: str = Field(default="30 days")


class Config:
    """Main configuration class for the checker."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration from file and environment variables."""
        self.config_path = config_path or DEFAULT_CONFIG_PATH
        self._config_data = self._load_config(required=config_path is not None)

        try:
            self.app = AppConfig(**self._section("app"))
            self.pipeline = PipelineSettings(**self._section("pipeline"))
            self.filter = FilterSettings(**self._section("filter"))
            self.tokenization = TokenizationSettings(**self._section("tokenization"))
            self.translation = TranslationSettings(**self._section("translation"))
            self.logging = LoggingSettings(**self._section("logging"))
        except PydanticValidationError as e:
            raise ConfigurationError(f"Invalid configuration in {self.config_path}: {e}")

    def _load_config(self, required: bool) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        config_file = Path(self.config_path)
        if not config_file.exists():
            if required:
                raise ConfigurationError(f"Config file not found: {self.config_path}")
            return {}
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Config file {self.config_path} is not valid YAML: {e}")
        if not isinstance(data, dict):
            raise ConfigurationError(f"Config file {self.config_path} must contain a mapping")
        return data

    def _section(self, name: str) -> Dict[str, Any]:
        section = self._config_data.get(name) or {}
        if not isinstance(section, dict):
            raise ConfigurationError(f"Config section '{name}' must be a mapping")
        return section

    def apply_overrides(
        self,
        threshold: Optional[int] = None,
        backend: Optional[str] = None,
        replay_only: Optional[bool] = None
    ) -> "Config":
        """Apply command-line overrides in place."""
        try:
            if threshold is not None:
                self.pipeline = PipelineSettings(**{**self.pipeline.model_dump(), "threshold": threshold})
            if backend is not None:
                self.translation = TranslationSettings(**{**self.translation.model_dump(), "backend": backend})
            if replay_only is not None:
                self.translation = TranslationSettings(
                    **{**self.translation.model_dump(), "replay_only": replay_only}
                )
        except PydanticValidationError as e:
            raise ConfigurationError(f"Invalid command-line override: {e}")
        return self

    def filter_config(self) -> FilterConfig:
        """Build the RTI filter, reading the stop-word file when configured."""
        stopwords = DEFAULT_STOPWORDS
        if self.filter.stopwords_file:
            # Imported here; the extractor module pulls in the logger, which needs this module.
            from src.nlp.rti_extractor import load_stopwords
            stopwords = load_stopwords(self.filter.stopwords_file)
        try:
            return FilterConfig(
                max_words=self.filter.max_words,
                min_content_words=self.filter.min_content_words,
                stopwords=stopwords
            )
        except PydanticValidationError as e:
            raise ConfigurationError(f"Invalid filter settings: {e}")

    def tokenization_mode(self) -> TokenizationMode:
        """Tokenization mode for the configured target language."""
        return self.tokenization.mode_for(self.pipeline.target_language)

    def snapshot(self) -> Dict[str, Any]:
        """Output-relevant settings, for embedding in reports. Never contains secrets."""
        return {
            "threshold": self.pipeline.threshold,
            "source_language": self.pipeline.source_language,
            "target_language": self.pipeline.target_language,
            "filter": {
                "max_words": self.filter.max_words,
                "min_content_words": self.filter.min_content_words,
                "stopwords_file": self.filter.stopwords_file,
            },
            "tokenization": {
                "scheme": self.tokenization_mode().scheme.value,
                "punctuation_policy": self.tokenization_mode().punctuation_policy.value,
            },
            "translation": {
                "backend": self.translation.backend,
                "backend_id": self.translation.resolved_backend_id(),
                "replay_only": self.translation.replay_only,
            },
        }

    def missing_paths(self) -> List[str]:
        """Configured input files that do not exist."""
        candidates = [self.filter.stopwords_file]
        if self.translation.backend == "mock":
            candidates.append(self.translation.mock.dictionary_path)
            candidates.append(self.translation.mock.faults_path)
        return [path for path in candidates if path and not Path(path).exists()]


# Global configuration instance
config = Config()
