"""
Translation backends for the gateway.

Backends share one interface so the gateway can swap a live REST provider
for the compositional mock translator without touching the pipeline.
"""

import time
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional
from urllib.parse import quote

import requests

from src.core.config import TranslationSettings, RestSettings
from src.core.exceptions import ConfigurationError, NetworkFailure
from src.core.models import TranslationOrigin
from src.translation.mock import FaultSpec, load_dictionary, load_faults, mock_backend_id, mock_translate
from src.translation.models import Translation, TranslationRequest
from src.utils.logger import get_logger

logger = get_logger("translation_backends")

# Transient statuses worth another attempt
RETRYABLE_STATUS = {408, 429, 500, 502, 503, 504}
BODY_EXCERPT_CHARS = 200


class TranslationBackend(ABC):
    """Base class for translation backends."""

    def __init__(self, backend_id: str):
        self.backend_id = backend_id
        self.calls = 0

    @abstractmethod
    def translate(self, request: TranslationRequest) -> Translation:
        """Translate one source text; one backend call per request."""
        pass


class MockTranslationBackend(TranslationBackend):
    """Dictionary-driven translator with optional scoped faults."""

    def __init__(self, dictionary: Dict[str, str], faults: Optional[List[FaultSpec]] = None,
                 backend_id: str = "mock"):
        super().__init__(backend_id)
        self.dictionary = dictionary
        self.faults = list(faults or [])

    def translate(self, request: TranslationRequest) -> Translation:
        self.calls += 1
        faults = [fault for fault in self.faults if fault.applies_to(request.text)]
        return mock_translate(
            request.text,
            self.dictionary,
            faults,
            src_lang=request.src_lang,
            tgt_lang=request.tgt_lang,
            backend_id=request.backend_id
        )


def _render(template: Any, values: Dict[str, str]) -> Any:
    """Fill ``{text}``, ``{src}``, ``{tgt}``, ``{api_key}`` placeholders in nested templates."""
    if isinstance(template, str):
        return template.format_map(values)
    if isinstance(template, dict):
        return {key: _render(value, values) for key, value in template.items()}
    if isinstance(template, list):
        return [_render(item, values) for item in template]
    return template


def extract_path(payload: Any, path: str) -> Any:
    """Follow a dotted path into JSON; integer segments index lists."""
    current = payload
    for segment in path.split("."):
        if isinstance(current, list) and segment.lstrip("-").isdigit():
            current = current[int(segment)]
        elif isinstance(current, dict):
            current = current[segment]
        else:
            raise KeyError(segment)
    return current


class RestTranslationBackend(TranslationBackend):
    """Generic template-configured REST adapter with bounded retries."""

    def __init__(self, settings: RestSettings, backend_id: Optional[str] = None,
                 session: Optional[requests.Session] = None, sleep=time.sleep):
        super().__init__(backend_id or settings.provider_id)
        if not settings.url_template:
            raise ConfigurationError("translation.rest.url_template must be set for the rest backend")
        self.settings = settings
        self.session = session or requests.Session()
        self._sleep = sleep

    def _build_request(self, request: TranslationRequest) -> Dict[str, Any]:
        values = {
            "text": request.text,
            "src": request.src_lang,
            "tgt": request.tgt_lang,
            "api_key": self.settings.api_key() or "",
        }
        url_values = {key: quote(value, safe="") for key, value in values.items()}
        prepared: Dict[str, Any] = {
            "method": self.settings.method,
            "url": self.settings.url_template.format_map(url_values),
            "headers": _render(self.settings.headers_template, values),
            "timeout": self.settings.timeout,
        }
        if self.settings.query_template:
            prepared["params"] = _render(self.settings.query_template, values)
        if self.settings.body_template:
            prepared["json"] = _render(self.settings.body_template, values)
        return prepared

    def _parse(self, request: TranslationRequest, response: requests.Response) -> Translation:
        try:
            target = extract_path(response.json(), self.settings.response_path)
        except (ValueError, KeyError, IndexError, TypeError):
            raise NetworkFailure(response.status_code, response.text[:BODY_EXCERPT_CHARS])
        if not isinstance(target, str):
            raise NetworkFailure(response.status_code, f"non-string value at {self.settings.response_path}")
        return Translation(request=request, target_text=target, origin=TranslationOrigin.NETWORK)

    def translate(self, request: TranslationRequest) -> Translation:
        """POST/GET once per text; retry transient failures with exponential backoff."""
        prepared = self._build_request(request)
        last_status: Optional[int] = None
        last_body = ""

        for attempt in range(self.settings.max_attempts):
            self.calls += 1
            try:
                response = self.session.request(**prepared)
            except requests.RequestException as e:
                last_status, last_body = None, str(e)[:BODY_EXCERPT_CHARS]
                logger.warning(f"Transport error on attempt {attempt + 1}: {e}")
            else:
                if response.status_code == 200:
                    return self._parse(request, response)
                last_status, last_body = response.status_code, response.text[:BODY_EXCERPT_CHARS]
                if response.status_code not in RETRYABLE_STATUS:
                    break
                logger.warning(f"HTTP {response.status_code} on attempt {attempt + 1}")

            if attempt < self.settings.max_attempts - 1:
                wait_time = self.settings.backoff_seconds * (2 ** attempt)
                self._sleep(wait_time)

        logger.error(f"Translation failed for {request.text[:60]!r}: status={last_status}")
        raise NetworkFailure(last_status, last_body)


class BackendFactory:
    """Factory for creating translation backends."""

    @staticmethod
    def create_backend(settings: TranslationSettings) -> Optional[TranslationBackend]:
        """Backend for the configured kind; replay has none and serves from cache only."""
        backend_id = settings.resolved_backend_id()
        if settings.backend == "replay":
            return None
        if settings.backend == "rest":
            return RestTranslationBackend(settings.rest, backend_id=backend_id)
        if settings.backend == "mock":
            dictionary = load_dictionary(settings.mock.dictionary_path)
            faults = load_faults(settings.mock.faults_path) if settings.mock.faults_path else []
            if not settings.backend_id:
                backend_id = mock_backend_id(dictionary, faults)
            return MockTranslationBackend(dictionary, faults, backend_id=backend_id)
        raise ConfigurationError(f"Unsupported translation backend: {settings.backend}")
