"""
Detection pipeline for the referential transparency translation checker.

Runs the four steps over a corpus: extract RTIs, build RTI pairs,
translate both sides of every pair, and report pairs whose translations
violate the distance bound.
"""

import hashlib
import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from src.core.config import Config
from src.core.detector import SuspiciousIssue, TranslatedPair, detect
from src.core.exceptions import CorpusFormatError, TreeParseError, YieldMismatch
from src.core.models import FilterConfig, TokenizationMode
from src.nlp.rti_extractor import RtiPair, extract_rtis, generate_pairs
from src.nlp.treebank import ConstituencyTree, parse_bracketed
from src.translation.backends import BackendFactory
from src.translation.cache import ReplayCache
from src.translation.gateway import TranslationGateway
from src.utils.logger import get_logger

logger = get_logger("pipeline")

REPORT_SCHEMA = 1


@dataclass(frozen=True)
class CorpusSentence:
    sentence_id: str
    text: str
    tree: ConstituencyTree


@dataclass
class Corpus:
    sentences: List[CorpusSentence]
    digest: str
    path: Optional[str] = None

    def __len__(self) -> int:
        return len(self.sentences)


def parse_corpus_lines(lines: List[str], path: Optional[str] = None) -> Corpus:
    """Parse JSONL corpus lines ``{id, text, tree}``; blank lines are skipped."""
    sentences: List[CorpusSentence] = []
    seen_ids = set()
    hasher = hashlib.sha256()

    for line_number, line in enumerate(lines, start=1):
        hasher.update(line.encode("utf-8"))
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusFormatError(line_number, f"invalid JSON: {e}")
        if not isinstance(record, dict):
            raise CorpusFormatError(line_number, "expected a JSON object")
        missing = [key for key in ("id", "text", "tree") if key not in record]
        if missing:
            raise CorpusFormatError(line_number, f"missing field(s): {', '.join(missing)}")

        sentence_id = str(record["id"])
        if sentence_id in seen_ids:
            raise CorpusFormatError(line_number, f"duplicate sentence id {sentence_id}")
        seen_ids.add(sentence_id)

        try:
            tree = parse_bracketed(record["tree"], sentence_id=sentence_id)
        except TreeParseError as e:
            raise CorpusFormatError(line_number, f"bad tree: {e.message}")

        text = " ".join(str(record["text"]).split())
        if tree.sentence != text:
            raise YieldMismatch(sentence_id, text, tree.sentence)
        sentences.append(CorpusSentence(sentence_id=sentence_id, text=text, tree=tree))

    return Corpus(sentences=sentences, digest=hasher.hexdigest(), path=path)


def load_corpus(path: str) -> Corpus:
    """Load a JSONL corpus file."""
    corpus_file = Path(path)
    if not corpus_file.exists():
        raise CorpusFormatError(0, f"corpus file not found: {path}")
    try:
        with open(corpus_file, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise CorpusFormatError(0, f"cannot read {path}: {e}")
    corpus = parse_corpus_lines(lines, path=path)
    logger.info(f"Loaded {len(corpus)} sentences from {path}")
    return corpus


@dataclass
class SentenceSummary:
    sentence_id: str
    rti_count: int
    pair_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.sentence_id, "rti_count": self.rti_count, "pair_count": self.pair_count}


@dataclass
class Report:
    """Pipeline output. ``to_dict`` holds only the deterministic section."""
    config_snapshot: Dict[str, Any]
    corpus_digest: str
    sentences: List[SentenceSummary]
    issues: List[SuspiciousIssue]
    run_info: Dict[str, Any] = field(default_factory=dict)

    @property
    def total_rtis(self) -> int:
        return sum(s.rti_count for s in self.sentences)

    @property
    def total_pairs(self) -> int:
        return sum(s.pair_count for s in self.sentences)

    def summary(self) -> Dict[str, int]:
        return {
            "sentences": len(self.sentences),
            "rtis": self.total_rtis,
            "pairs": self.total_pairs,
            "suspicious_issues": len(self.issues),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "config": self.config_snapshot,
            "corpus_digest": self.corpus_digest,
            "summary": self.summary(),
            "sentences": [s.to_dict() for s in self.sentences],
            "issues": [issue.to_dict() for issue in self.issues],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        return cls(
            config_snapshot=data.get("config", {}),
            corpus_digest=data.get("corpus_digest", ""),
            sentences=[
                SentenceSummary(s["id"], s["rti_count"], s["pair_count"])
                for s in data.get("sentences", [])
            ],
            issues=[SuspiciousIssue.from_dict(item) for item in data.get("issues", [])],
        )


class DetectionPipeline:
    """Extract, pair, translate, detect."""

    def __init__(
        self,
        filter_config: FilterConfig,
        mode: TokenizationMode,
        gateway: TranslationGateway,
        threshold: int = 2,
        config_snapshot: Optional[Dict[str, Any]] = None
    ):
        self.filter_config = filter_config
        self.mode = mode
        self.gateway = gateway
        self.threshold = threshold
        self.config_snapshot = config_snapshot or {"threshold": threshold}

    @classmethod
    def from_config(cls, cfg: Config) -> "DetectionPipeline":
        """Wire the pipeline from settings."""
        translation = cfg.translation
        backend = BackendFactory.create_backend(translation)
        backend_id = backend.backend_id if backend is not None else translation.resolved_backend_id()
        snapshot = cfg.snapshot()
        snapshot["translation"]["backend_id"] = backend_id
        gateway = TranslationGateway(
            cache=ReplayCache(translation.cache_path),
            backend=backend,
            backend_id=backend_id,
            src_lang=cfg.pipeline.source_language,
            tgt_lang=cfg.pipeline.target_language,
            replay_only=translation.replay_only,
            max_in_flight=cfg.pipeline.max_in_flight
        )
        return cls(
            filter_config=cfg.filter_config(),
            mode=cfg.tokenization_mode(),
            gateway=gateway,
            threshold=cfg.pipeline.threshold,
            config_snapshot=snapshot
        )

    def build_pairs(self, corpus: Corpus) -> List[Tuple[CorpusSentence, int, List[RtiPair]]]:
        """Steps 1-2: (sentence, rti count, pairs) per sentence, in corpus order."""
        per_sentence = []
        for sentence in corpus.sentences:
            rtis = extract_rtis(sentence.tree, self.filter_config)
            pairs = generate_pairs(rtis, sentence.text, sentence.tree)
            per_sentence.append((sentence, len(rtis), pairs))
        logger.info(
            f"Extracted {sum(n for _, n, _ in per_sentence)} RTIs and "
            f"{sum(len(p) for _, _, p in per_sentence)} pairs"
        )
        return per_sentence

    def translate_pairs(self, pairs: List[RtiPair]) -> List[TranslatedPair]:
        """Step 3: translate both sides; one request per distinct text."""
        requests = []
        for pair in pairs:
            requests.append(self.gateway.request_for(pair.rti.text))
            requests.append(self.gateway.request_for(pair.container_text))
        translations = self.gateway.translate_many(requests)
        return [
            TranslatedPair(pair=pair, rti_translation=translations[2 * i],
                           container_translation=translations[2 * i + 1])
            for i, pair in enumerate(pairs)
        ]

    def translate_corpus(self, corpus: Corpus) -> List[TranslatedPair]:
        """Steps 1-3 for the whole corpus."""
        pairs = [pair for _, _, sentence_pairs in self.build_pairs(corpus) for pair in sentence_pairs]
        try:
            return self.translate_pairs(pairs)
        finally:
            self.gateway.close()

    def detect_all(self, translated: List[TranslatedPair], d: Optional[int] = None) -> List[SuspiciousIssue]:
        """Step 4, preserving pair order."""
        threshold = self.threshold if d is None else d
        issues = []
        for tp in translated:
            issue = detect(tp.pair, tp.rti_translation, tp.container_translation, threshold, self.mode)
            if issue is not None:
                issues.append(issue)
        return issues

    def run(self, corpus: Corpus) -> Report:
        """Run all four steps and build the report."""
        started = datetime.now(timezone.utc)
        start_time = time.time()

        per_sentence = self.build_pairs(corpus)
        pairs = [pair for _, _, sentence_pairs in per_sentence for pair in sentence_pairs]
        try:
            translated = self.translate_pairs(pairs)
        finally:
            self.gateway.close()
        issues = self.detect_all(translated)

        duration = time.time() - start_time
        logger.info(f"Found {len(issues)} suspicious issues in {len(pairs)} pairs ({duration:.2f}s)")

        return Report(
            config_snapshot=self.config_snapshot,
            corpus_digest=corpus.digest,
            sentences=[SentenceSummary(s.sentence_id, n, len(p)) for s, n, p in per_sentence],
            issues=issues,
            run_info={
                "started_at": started.isoformat(),
                "finished_at": datetime.now(timezone.utc).isoformat(),
                "duration_seconds": round(duration, 3),
                "corpus_path": corpus.path,
                "gateway": self.gateway.stats(),
            }
        )
