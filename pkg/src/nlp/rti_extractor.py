"""
RTI identification and pairing.

Noun phrases become referentially transparent inputs (RTIs) when they are
short enough and carry enough content words. Each RTI is then paired with
the full sentence it came from and with every containing RTI.
"""

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Set

from src.core.exceptions import ConfigurationError
from src.core.models import ContainerKind, FilterConfig
from src.nlp.treebank import ConstituencyTree, NodePath, Span, ancestors_with_label, yield_text
from src.utils.logger import get_logger

logger = get_logger("rti_extractor")

NOUN_PHRASE = "NP"


@dataclass(frozen=True)
class Rti:
    """A noun phrase that passed both filters."""
    sentence_id: str
    span: Span
    text: str
    node_path: NodePath

    @property
    def word_count(self) -> int:
        return self.span[1] - self.span[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sentence_id": self.sentence_id,
            "span": list(self.span),
            "text": self.text,
            "node_path": list(self.node_path),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Rti":
        return cls(
            sentence_id=str(data["sentence_id"]),
            span=tuple(data["span"]),
            text=data["text"],
            node_path=tuple(data["node_path"]),
        )


@dataclass(frozen=True)
class RtiPair:
    """An RTI and a strictly longer text containing it."""
    rti: Rti
    container_text: str
    container_kind: ContainerKind
    pair_id: str

    def issue_id(self, backend_id: str) -> str:
        """Stable id across re-runs: digest of backend, RTI text and container text."""
        digest = hashlib.sha256(
            "\x1f".join((backend_id, self.rti.text, self.container_text)).encode("utf-8")
        )
        return digest.hexdigest()[:16]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair_id": self.pair_id,
            "rti": self.rti.to_dict(),
            "container_text": self.container_text,
            "container_kind": self.container_kind.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RtiPair":
        return cls(
            rti=Rti.from_dict(data["rti"]),
            container_text=data["container_text"],
            container_kind=ContainerKind(data["container_kind"]),
            pair_id=data["pair_id"],
        )


def load_stopwords(path: str) -> FrozenSet[str]:
    """Read a stop-word file: UTF-8, one word per line, '#' starts a comment."""
    stopword_file = Path(path)
    if not stopword_file.exists():
        raise ConfigurationError(f"Stop-word file not found: {path}")

    words: Set[str] = set()
    try:
        with open(stopword_file, 'r', encoding='utf-8') as f:
            for line in f:
                word = line.split("#", 1)[0].strip()
                if word:
                    words.add(word.casefold())
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"Cannot read stop-word file {path}: {e}")

    if not words:
        raise ConfigurationError(f"Stop-word file {path} is empty")
    logger.debug(f"Loaded {len(words)} stop-words from {path}")
    return frozenset(words)


def is_content_word(token: str, cfg: FilterConfig) -> bool:
    """True unless the case-folded token is a stop-word."""
    return token.casefold() not in cfg.stopwords


def _passes_filters(tokens: List[str], cfg: FilterConfig) -> bool:
    # The word cap counts every token; the floor counts content tokens only.
    if len(tokens) > cfg.max_words:
        return False
    content = sum(1 for token in tokens if is_content_word(token, cfg))
    return content >= cfg.min_content_words


def extract_rtis(tree: ConstituencyTree, cfg: FilterConfig) -> List[Rti]:
    """Every NP passing the filters, in pre-order, one per span."""
    rtis: List[Rti] = []
    seen_spans: Set[Span] = set()

    for node, path in tree.iter_nodes():
        if node.is_leaf or node.base_label != NOUN_PHRASE or node.span in seen_spans:
            continue
        tokens = yield_text(node, tree)
        if not _passes_filters(tokens, cfg):
            continue
        seen_spans.add(node.span)
        rtis.append(Rti(
            sentence_id=tree.sentence_id,
            span=node.span,
            text=" ".join(tokens),
            node_path=path
        ))

    logger.debug(f"Sentence {tree.sentence_id}: {len(rtis)} RTIs")
    return rtis


def generate_pairs(rtis: List[Rti], sentence: str, tree: ConstituencyTree) -> List[RtiPair]:
    """Pair each RTI with its sentence and with each containing RTI.

    Order: RTI pre-order position, then the full-sentence pair, then
    ancestor pairs innermost first.
    """
    by_span: Dict[Span, Rti] = {rti.span: rti for rti in rtis}
    whole = (0, len(tree.tokens))
    pairs: List[RtiPair] = []

    def add(rti: Rti, container_text: str, kind: ContainerKind):
        pairs.append(RtiPair(
            rti=rti,
            container_text=container_text,
            container_kind=kind,
            pair_id=f"{tree.sentence_id}#{len(pairs)}"
        ))

    for rti in rtis:
        if rti.span != whole:
            add(rti, sentence, ContainerKind.FULL_SENTENCE)

        node = tree.node_at(rti.node_path)
        used: Set[Span] = set()
        for ancestor in ancestors_with_label(node, NOUN_PHRASE, tree):
            container = by_span.get(ancestor.span)
            if container is None or ancestor.span in used or container.word_count <= rti.word_count:
                continue
            used.add(ancestor.span)
            add(rti, container.text, ContainerKind.ANCESTOR_NP)

    return pairs
