"""
Compositional mock translator with fault injection.

Translates word by word through a dictionary, then applies injected faults
(under-translation, over-translation, mistranslation). With an injective
dictionary and no faults every RTI pair has distance 0, which makes the
mock a ground-truth oracle for desk-scale evaluation.
"""

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.core.detector import is_punctuation
from src.core.exceptions import ConfigurationError, UnknownToken, ValidationError
from src.core.models import FaultKind, TranslationOrigin
from src.translation.models import Translation, TranslationRequest, normalize_text

# (index of the source token, target token)
_Aligned = Tuple[int, str]


@dataclass(frozen=True)
class FaultSpec:
    """A deterministic fault.

    Target tokens are selected by source word, by a half-open span over the
    target tokens, or, when neither is given, by one position drawn with
    ``seed``. ``scope`` restricts the fault to one source text.
    """
    kind: FaultKind
    seed: int = 0
    source_word: Optional[str] = None
    target_span: Optional[Tuple[int, int]] = None
    replacement: Optional[str] = None
    scope: Optional[str] = None

    def applies_to(self, text: str) -> bool:
        return self.scope is None or normalize_text(self.scope) == normalize_text(text)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FaultSpec":
        span = data.get("target_span")
        return cls(
            kind=FaultKind(data["kind"]),
            seed=int(data.get("seed", 0)),
            source_word=data.get("source_word"),
            target_span=tuple(span) if span is not None else None,
            replacement=data.get("replacement"),
            scope=data.get("scope"),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "seed": self.seed,
            "source_word": self.source_word,
            "target_span": list(self.target_span) if self.target_span else None,
            "replacement": self.replacement,
            "scope": self.scope,
        }


def mock_backend_id(dictionary: Dict[str, str], faults: Sequence[FaultSpec] = ()) -> str:
    """``mock-<12 hex>`` fingerprint of the dictionary and fault set.

    Cached mock translations are keyed by it, so a changed dictionary or
    fault file never replays translations produced under the old one.
    """
    payload = json.dumps(
        {"dictionary": dictionary, "faults": [fault.to_dict() for fault in faults]},
        ensure_ascii=False, sort_keys=True, separators=(",", ":")
    )
    return "mock-" + hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def _read_json(path: Path, what: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"{what} {path} is not readable JSON: {e}")


def load_dictionary(path: str) -> Dict[str, str]:
    """Load a JSON object mapping source words to target text."""
    dictionary_file = Path(path)
    if not dictionary_file.exists():
        raise ConfigurationError(f"Mock dictionary not found: {path}")
    data = _read_json(dictionary_file, "Mock dictionary")
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise ConfigurationError(f"Mock dictionary {path} must map strings to strings")
    return data


def load_faults(path: str) -> List[FaultSpec]:
    """Load a JSON array of fault objects."""
    fault_file = Path(path)
    if not fault_file.exists():
        raise ConfigurationError(f"Fault file not found: {path}")
    data = _read_json(fault_file, "Fault file")
    if not isinstance(data, list):
        raise ConfigurationError(f"Fault file {path} must be a JSON array")
    try:
        return [FaultSpec.from_dict(item) for item in data]
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"Fault file {path} is malformed: {e}")


def _lookup(token: str, dictionary: Dict[str, str]) -> List[str]:
    if token in dictionary:
        return dictionary[token].split()
    folded = token.casefold()
    if folded in dictionary:
        return dictionary[folded].split()
    raise UnknownToken(token)


def _select(fault: FaultSpec, aligned: List[_Aligned], source_tokens: Sequence[str]) -> List[int]:
    if fault.source_word is not None:
        wanted = fault.source_word.casefold()
        return [
            position for position, (source_index, _) in enumerate(aligned)
            if source_tokens[source_index].casefold() == wanted
        ]
    if fault.target_span is not None:
        start, end = fault.target_span
        return list(range(max(start, 0), min(end, len(aligned))))
    if not aligned:
        return []
    return [random.Random(fault.seed).randrange(len(aligned))]


def _wrong_token(fault: FaultSpec, original: str, dictionary: Dict[str, str]) -> str:
    if fault.replacement:
        return fault.replacement
    # Punctuation-only tokens vanish under the strip policy
    candidates = sorted({
        token for value in dictionary.values() for token in value.split()
        if not all(is_punctuation(char) for char in token)
    } - {original})
    if not candidates:
        raise ValidationError("Mistranslation needs a replacement: the dictionary has no other target token")
    return random.Random(fault.seed).choice(candidates)


def _apply(fault: FaultSpec, aligned: List[_Aligned], source_tokens: Sequence[str],
           dictionary: Dict[str, str]) -> List[_Aligned]:
    selected = set(_select(fault, aligned, source_tokens))
    result: List[_Aligned] = []
    for position, entry in enumerate(aligned):
        if position not in selected:
            result.append(entry)
        elif fault.kind == FaultKind.UNDER_TRANSLATION:
            continue
        elif fault.kind == FaultKind.OVER_TRANSLATION:
            result.extend((entry, entry))
        else:
            result.append((entry[0], _wrong_token(fault, entry[1], dictionary)))
    return result


def mock_translate(
    text: str,
    dictionary: Dict[str, str],
    faults: Sequence[FaultSpec] = (),
    src_lang: str = "en",
    tgt_lang: str = "zh",
    backend_id: str = "mock"
) -> Translation:
    """Translate token by token, then apply ``faults`` in order."""
    request = TranslationRequest(text=text, src_lang=src_lang, tgt_lang=tgt_lang, backend_id=backend_id)
    source_tokens = text.split()

    aligned: List[_Aligned] = [
        (index, target)
        for index, token in enumerate(source_tokens)
        for target in _lookup(token, dictionary)
    ]
    for fault in faults:
        aligned = _apply(fault, aligned, source_tokens, dictionary)

    return Translation(
        request=request,
        target_text=" ".join(target for _, target in aligned),
        origin=TranslationOrigin.MOCK
    )
