"""
Replay cache for translations.

Persisted as one JSON array of ``{backend, src, tgt, text, translation}``
records so golden data stays human-diffable. Keys are exact matches on the
normalized source text (NFC, whitespace collapsed).
"""

import json
import threading
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from src.core.exceptions import CacheConflict, ConfigurationError, ValidationError
from src.core.models import TranslationOrigin
from src.translation.models import Translation, TranslationRequest, normalize_text
from src.utils.logger import get_logger

logger = get_logger("replay_cache")

CacheKey = Tuple[str, str, str, str]


def cache_key(backend_id: str, src_lang: str, tgt_lang: str, text: str) -> CacheKey:
    key = (backend_id, src_lang, tgt_lang, normalize_text(text))
    if not all(key):
        raise ValidationError(f"Cache key fields must be non-empty: {key!r}")
    return key


def request_key(request: TranslationRequest) -> CacheKey:
    return cache_key(request.backend_id, request.src_lang, request.tgt_lang, request.text)


class ReplayCache:
    """Thread-safe translation cache with optional JSON persistence."""

    def __init__(self, path: Optional[str] = None):
        self.path = Path(path) if path else None
        self._entries: Dict[CacheKey, str] = {}
        self._lock = threading.Lock()
        self._dirty = False
        self.hits = 0
        self.misses = 0

        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        try:
            with open(self.path, 'r', encoding='utf-8') as f:
                records = json.load(f)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Replay cache {self.path} is not valid JSON: {e}")
        if not isinstance(records, list):
            raise ConfigurationError(f"Replay cache {self.path} must be a JSON array")

        for index, record in enumerate(records):
            try:
                key = cache_key(record["backend"], record["src"], record["tgt"], record["text"])
                translation = record["translation"]
            except (KeyError, TypeError, ValidationError) as e:
                raise ConfigurationError(f"Replay cache {self.path} record {index} is malformed: {e}")
            existing = self._entries.get(key)
            if existing is not None and existing != translation:
                raise CacheConflict(existing, translation)
            self._entries[key] = translation

        logger.info(f"Loaded {len(self._entries)} cached translations from {self.path}")

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, request: TranslationRequest) -> Optional[Translation]:
        """Exact-match lookup on the normalized key."""
        key = request_key(request)
        with self._lock:
            target = self._entries.get(key)
            if target is None:
                self.misses += 1
                return None
            self.hits += 1
        return Translation(request=request, target_text=target, origin=TranslationOrigin.CACHE)

    def put(self, translation: Translation):
        """Store a translation; idempotent for identical values, CacheConflict otherwise."""
        key = request_key(translation.request)
        with self._lock:
            existing = self._entries.get(key)
            if existing is not None:
                if existing != translation.target_text:
                    raise CacheConflict(existing, translation.target_text)
                return
            self._entries[key] = translation.target_text
            self._dirty = True

    def records(self) -> List[Dict[str, str]]:
        """All entries as JSON records, in a fixed order."""
        with self._lock:
            items = sorted(self._entries.items())
        return [
            {"backend": backend, "src": src, "tgt": tgt, "text": text, "translation": target}
            for (backend, src, tgt, text), target in items
        ]

    def save(self):
        """Write the cache back to its file if anything was added."""
        if self.path is None or not self._dirty:
            return
        records = self.records()
        tmp_path = self.path.with_suffix(self.path.suffix + ".tmp")
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(tmp_path, 'w', encoding='utf-8') as f:
                json.dump(records, f, ensure_ascii=False, indent=2)
                f.write("\n")
            tmp_path.replace(self.path)
        except OSError as e:
            raise ConfigurationError(f"Cannot write replay cache {self.path}: {e}")
        self._dirty = False
        logger.info(f"Saved {len(records)} cached translations to {self.path}")
