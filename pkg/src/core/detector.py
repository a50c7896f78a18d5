"""
Bag-of-words detection of translation errors.

Translations are reduced to multisets of tokens. An RTI pair is suspicious
when the translation of the RTI contains more than ``d`` token occurrences
that the translation of its container lacks.
"""

import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from src.core.exceptions import ModeMismatch, ValidationError
from src.core.models import PunctuationPolicy, TokenizationMode, TokenizationScheme, TranslationOrigin
from src.nlp.rti_extractor import RtiPair
from src.translation.models import Translation, TranslationRequest, normalize_text


def is_punctuation(char: str) -> bool:
    return unicodedata.category(char).startswith("P")


@dataclass(frozen=True)
class BagOfWords:
    """Multiset of target-language tokens."""
    counts: Counter
    mode: TokenizationMode

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    def __len__(self) -> int:
        return self.size


def bag_of_words(text: str, mode: TokenizationMode) -> BagOfWords:
    """Tokenize ``text`` and count occurrences.

    whitespace: split on Unicode whitespace and case-fold; with the strip
    policy, punctuation at token edges is removed and punctuation-only tokens
    are dropped. per_character: every non-whitespace character is a token,
    punctuation characters dropped under strip.
    """
    strip = mode.punctuation_policy == PunctuationPolicy.STRIP
    tokens: List[str] = []

    if mode.scheme == TokenizationScheme.PER_CHARACTER:
        for char in text:
            if char.isspace() or (strip and is_punctuation(char)):
                continue
            tokens.append(char)
    else:
        for raw in text.split():
            token = raw.casefold()
            if strip:
                start, end = 0, len(token)
                while start < end and is_punctuation(token[start]):
                    start += 1
                while end > start and is_punctuation(token[end - 1]):
                    end -= 1
                token = token[start:end]
            if token:
                tokens.append(token)

    return BagOfWords(counts=Counter(tokens), mode=mode)


def bow_difference(bow_r: BagOfWords, bow_con: BagOfWords) -> Counter:
    """Occurrences in bow_r that bow_con lacks (multiset difference)."""
    if bow_r.mode != bow_con.mode:
        raise ModeMismatch(bow_r.mode, bow_con.mode)
    return bow_r.counts - bow_con.counts


def bow_distance(bow_r: BagOfWords, bow_con: BagOfWords) -> int:
    """|BoW_r \\ BoW_con|, i.e. sum over w of max(0, r(w) - con(w)). Asymmetric: RTI side first."""
    return sum(bow_difference(bow_r, bow_con).values())


@dataclass(frozen=True)
class TranslatedPair:
    """An RTI pair with both of its translations."""
    pair: RtiPair
    rti_translation: Translation
    container_translation: Translation


@dataclass(frozen=True)
class SuspiciousIssue:
    """An RTI pair whose translations violate the distance bound."""
    pair: RtiPair
    rti_translation: Translation
    container_translation: Translation
    distance: int
    threshold_used: int
    missing_tokens: tuple = ()

    @property
    def issue_id(self) -> str:
        return self.pair.issue_id(self.rti_translation.request.backend_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "issue_id": self.issue_id,
            "pair": self.pair.to_dict(),
            "backend_id": self.rti_translation.request.backend_id,
            "src_lang": self.rti_translation.request.src_lang,
            "tgt_lang": self.rti_translation.request.tgt_lang,
            "rti_translation": self.rti_translation.target_text,
            "container_translation": self.container_translation.target_text,
            "distance": self.distance,
            "threshold_used": self.threshold_used,
            "missing_tokens": list(self.missing_tokens),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SuspiciousIssue":
        """Rebuild an issue from a report entry; translation origins are recorded as cache."""
        pair = RtiPair.from_dict(data["pair"])

        def translation(source: str, target: str) -> Translation:
            request = TranslationRequest(
                text=source, src_lang=data["src_lang"], tgt_lang=data["tgt_lang"],
                backend_id=data["backend_id"]
            )
            return Translation(request=request, target_text=target, origin=TranslationOrigin.CACHE)

        return cls(
            pair=pair,
            rti_translation=translation(pair.rti.text, data["rti_translation"]),
            container_translation=translation(pair.container_text, data["container_translation"]),
            distance=int(data["distance"]),
            threshold_used=int(data["threshold_used"]),
            missing_tokens=tuple(data.get("missing_tokens", ())),
        )


def _check_correspondence(pair: RtiPair, t_r: Translation, t_con: Translation):
    if normalize_text(t_r.request.text) != normalize_text(pair.rti.text):
        raise ValidationError(f"RTI translation of pair {pair.pair_id} is for a different source text")
    if normalize_text(t_con.request.text) != normalize_text(pair.container_text):
        raise ValidationError(f"Container translation of pair {pair.pair_id} is for a different source text")


def detect(
    pair: RtiPair,
    t_r: Translation,
    t_con: Translation,
    d: int,
    mode: TokenizationMode
) -> Optional[SuspiciousIssue]:
    """A SuspiciousIssue iff bow_distance(T(r), T(C_con(r))) > d."""
    if d < 0:
        raise ValidationError(f"Threshold must be non-negative, got {d}")
    _check_correspondence(pair, t_r, t_con)

    missing = bow_difference(bag_of_words(t_r.target_text, mode), bag_of_words(t_con.target_text, mode))
    distance = sum(missing.values())
    if distance <= d:
        return None
    return SuspiciousIssue(
        pair=pair,
        rti_translation=t_r,
        container_translation=t_con,
        distance=distance,
        threshold_used=d,
        missing_tokens=tuple(sorted(missing.elements()))
    )
