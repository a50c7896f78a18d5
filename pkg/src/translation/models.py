"""
Request and result types exchanged with translation backends.
"""

import re
import unicodedata
from dataclasses import dataclass

from src.core.exceptions import EmptyTranslation, ValidationError
from src.core.models import TranslationOrigin

# ISO 639 language with optional BCP 47 subtags, e.g. en, zh, zh-CN
_LANGUAGE_CODE_RE = re.compile(r"^[a-z]{2,3}(-[A-Za-z0-9]{2,8})*$")


def normalize_text(text: str) -> str:
    """NFC-normalize and collapse runs of whitespace."""
    return " ".join(unicodedata.normalize("NFC", text).split())


def is_language_code(code: str) -> bool:
    return bool(_LANGUAGE_CODE_RE.match(code or ""))


@dataclass(frozen=True)
class TranslationRequest:
    """One source text to translate with one backend."""
    text: str
    src_lang: str
    tgt_lang: str
    backend_id: str

    def __post_init__(self):
        if not self.text or not self.text.strip():
            raise ValidationError("Translation request text must not be empty")
        for code in (self.src_lang, self.tgt_lang):
            if not is_language_code(code):
                raise ValidationError(f"Malformed language code: {code!r}")
        if not self.backend_id:
            raise ValidationError("Translation request needs a backend id")


@dataclass(frozen=True)
class Translation:
    """A backend's answer to a TranslationRequest."""
    request: TranslationRequest
    target_text: str
    origin: TranslationOrigin

    def __post_init__(self):
        if not self.target_text or not self.target_text.strip():
            raise EmptyTranslation(self.request.text)

