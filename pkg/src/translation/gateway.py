"""
Translation gateway.

Cache-first access to a translation backend: cached results are served
directly, misses go to the backend (unless replay-only) and are written
through to the cache. Batches run on a bounded thread pool and come back
in request order.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from src.core.exceptions import CacheMiss
from src.translation.backends import TranslationBackend
from src.translation.cache import CacheKey, ReplayCache, request_key
from src.translation.models import Translation, TranslationRequest
from src.utils.logger import get_logger

logger = get_logger("translation_gateway")


class TranslationGateway:
    """Cache-first translation with write-through."""

    def __init__(
        self,
        cache: ReplayCache,
        backend: Optional[TranslationBackend],
        backend_id: str,
        src_lang: str = "en",
        tgt_lang: str = "zh",
        replay_only: bool = False,
        max_in_flight: int = 4
    ):
        self.cache = cache
        self.backend = backend
        self.backend_id = backend_id
        self.src_lang = src_lang
        self.tgt_lang = tgt_lang
        self.replay_only = replay_only or backend is None
        self.max_in_flight = max(1, max_in_flight)

    def request_for(self, text: str) -> TranslationRequest:
        return TranslationRequest(
            text=text, src_lang=self.src_lang, tgt_lang=self.tgt_lang, backend_id=self.backend_id
        )

    def translate(self, request: TranslationRequest) -> Translation:
        """Return the cached translation, or delegate and write through."""
        cached = self.cache.get(request)
        if cached is not None:
            return cached
        if self.replay_only:
            logger.warning(f"Cache miss in replay-only mode: {request.text[:60]!r}")
            raise CacheMiss(request.text)

        translation = self.backend.translate(request)
        self.cache.put(translation)
        return translation

    def translate_many(self, requests: Sequence[TranslationRequest]) -> List[Translation]:
        """Translate a batch; each distinct normalized text is translated once."""
        unique: Dict[CacheKey, TranslationRequest] = {}
        for request in requests:
            unique.setdefault(request_key(request), request)

        keys = list(unique)
        with ThreadPoolExecutor(max_workers=self.max_in_flight) as executor:
            results = list(executor.map(self.translate, (unique[key] for key in keys)))
        by_key = dict(zip(keys, results))

        logger.info(
            f"Translated {len(keys)} distinct texts "
            f"(cache hits={self.cache.hits}, misses={self.cache.misses})"
        )
        return [by_key[request_key(request)] for request in requests]

    def stats(self) -> Dict[str, int]:
        return {
            "cache_entries": len(self.cache),
            "cache_hits": self.cache.hits,
            "cache_misses": self.cache.misses,
            "backend_calls": self.backend.calls if self.backend is not None else 0,
        }

    def close(self):
        """Persist new cache entries."""
        self.cache.save()
