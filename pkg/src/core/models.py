"""
Shared value types for the referential transparency translation checker.

Enums and small immutable settings objects that several components
(extraction, translation, detection, evaluation) agree on.
"""

from enum import Enum
from typing import FrozenSet

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ContainerKind(str, Enum):
    """Where the containing text of an RTI pair comes from."""
    ANCESTOR_NP = "ancestor_np"
    FULL_SENTENCE = "full_sentence"


class TranslationOrigin(str, Enum):
    CACHE = "cache"
    NETWORK = "network"
    MOCK = "mock"


class FaultKind(str, Enum):
    """Faults the mock translator can inject."""
    UNDER_TRANSLATION = "under_translation"
    OVER_TRANSLATION = "over_translation"
    MISTRANSLATION = "mistranslation"


class ErrorCategory(str, Enum):
    """Labels a human reviewer can attach to an erroneous issue."""
    UNDER_TRANSLATION = "under_translation"
    OVER_TRANSLATION = "over_translation"
    MISTRANSLATION = "mistranslation"
    INCORRECT_MODIFICATION = "incorrect_modification"
    UNCLEAR_LOGIC = "unclear_logic"


class ErroneousSide(str, Enum):
    RTI = "rti"
    CONTAINER = "container"
    BOTH = "both"


class TokenizationScheme(str, Enum):
    WHITESPACE = "whitespace"
    PER_CHARACTER = "per_character"


class PunctuationPolicy(str, Enum):
    KEEP = "keep"
    STRIP = "strip"


# Articles, copulas, auxiliaries, prepositions, pronouns and conjunctions.
DEFAULT_STOPWORDS: FrozenSet[str] = frozenset({
    "a", "an", "the", "this", "that", "these", "those",
    "is", "am", "are", "was", "were", "be", "been", "being",
    "has", "have", "had", "do", "does", "did", "will", "would", "can", "could",
    "of", "in", "on", "at", "to", "for", "with", "by", "from", "about", "into", "as",
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them",
    "his", "its", "our", "their", "my", "your",
    "and", "or", "but", "nor", "so", "if", "than",
})


class FilterConfig(BaseModel):
    """Filters deciding which noun phrases become RTIs."""

    model_config = ConfigDict(frozen=True)

    max_words: int = Field(default=10, ge=1)
    min_content_words: int = Field(default=3, ge=1)
    stopwords: FrozenSet[str] = Field(default=DEFAULT_STOPWORDS)

    @field_validator("stopwords")
    @classmethod
    def _fold_stopwords(cls, value: FrozenSet[str]) -> FrozenSet[str]:
        folded = frozenset(word.casefold() for word in value if word.strip())
        if not folded:
            raise ValueError("stop-word list must not be empty")
        return folded

    @model_validator(mode="after")
    def _check_bounds(self) -> "FilterConfig":
        if self.max_words < self.min_content_words:
            raise ValueError(
                f"max_words ({self.max_words}) must be >= min_content_words ({self.min_content_words})"
            )
        return self


class TokenizationMode(BaseModel):
    """How target-language text is split into bag-of-words tokens."""

    model_config = ConfigDict(frozen=True)

    scheme: TokenizationScheme = TokenizationScheme.WHITESPACE
    punctuation_policy: PunctuationPolicy = PunctuationPolicy.STRIP

    def __str__(self) -> str:
        return f"{self.scheme.value}/{self.punctuation_policy.value}"
