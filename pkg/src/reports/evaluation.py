"""
Evaluation kit for detector output.

Precision over human-labelled issues, deduplicated counts of erroneous
translations, per-category tallies and threshold sweeps.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, model_validator

from src.core.detector import SuspiciousIssue, TranslatedPair, detect
from src.core.exceptions import EmptyIssueSet, LabelsFormatError, UnlabeledIssue, ValidationError
from src.core.models import ErroneousSide, ErrorCategory, TokenizationMode
from src.translation.models import normalize_text
from src.utils.logger import get_logger

logger = get_logger("evaluation")


class IssueLabel(BaseModel):
    """A reviewer's verdict on one suspicious issue."""
    is_error: bool
    categories: List[ErrorCategory] = Field(default_factory=list)
    erroneous_side: Optional[ErroneousSide] = None

    @model_validator(mode="after")
    def _consistent(self) -> "IssueLabel":
        if self.is_error and not self.categories:
            raise ValueError("an erroneous issue needs at least one category")
        if not self.is_error and self.categories:
            raise ValueError("categories are only allowed on erroneous issues")
        if self.is_error and self.erroneous_side is None:
            raise ValueError("an erroneous issue needs erroneous_side")
        return self


class EvalLabels(BaseModel):
    """Labels keyed by issue id."""
    labels: Dict[str, IssueLabel] = Field(default_factory=dict)

    def __contains__(self, issue_id: str) -> bool:
        return issue_id in self.labels

    def __getitem__(self, issue_id: str) -> IssueLabel:
        return self.labels[issue_id]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class PrecisionResult:
    true_count: int
    total_count: int
    precision: float


@dataclass(frozen=True)
class UniqueErrors:
    """Distinct erroneous translations as (source text, target text)."""
    count: int
    translations: Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class SweepRow:
    d: int
    suspicious_count: int
    erroneous_count: Optional[int] = None
    precision: Optional[float] = None

    def to_dict(self) -> Dict[str, Optional[float]]:
        return {
            "d": self.d,
            "suspicious_count": self.suspicious_count,
            "erroneous_count": self.erroneous_count,
            "precision": round(self.precision, 4) if self.precision is not None else None,
        }


def load_labels(path: str) -> EvalLabels:
    """Read a labels file: ``{"<issue_id>": {is_error, categories, erroneous_side}, ...}``."""
    labels_file = Path(path)
    if not labels_file.exists():
        raise LabelsFormatError(f"Labels file not found: {path}")
    try:
        with open(labels_file, 'r', encoding='utf-8') as f:
            data = json.load(f)
        if isinstance(data, dict) and "labels" in data:
            return EvalLabels(**data)
        return EvalLabels(labels=data)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, PydanticValidationError, TypeError) as e:
        raise LabelsFormatError(f"Labels file {path} is malformed: {e}")


def validate_labels(labels: EvalLabels, issue_ids: Iterable[str]):
    """Every labelled id must name an issue of the report."""
    unknown = sorted(set(labels.labels) - set(issue_ids))
    if unknown:
        raise LabelsFormatError(f"Labels reference issues missing from the report: {', '.join(unknown[:5])}")


def _label_for(labels: EvalLabels, issue: SuspiciousIssue) -> IssueLabel:
    issue_id = issue.issue_id
    if issue_id not in labels:
        raise UnlabeledIssue(issue_id)
    return labels[issue_id]


def precision(labels: EvalLabels, issues: Sequence[SuspiciousIssue]) -> PrecisionResult:
    """Share of suspicious issues labelled as real errors."""
    if not issues:
        raise EmptyIssueSet()
    true_count = sum(1 for issue in issues if _label_for(labels, issue).is_error)
    return PrecisionResult(
        true_count=true_count,
        total_count=len(issues),
        precision=true_count / len(issues)
    )


def unique_erroneous_translations(labels: EvalLabels, issues: Sequence[SuspiciousIssue]) -> UniqueErrors:
    """Count erroneous translations once, however many issues share them."""
    found: Set[Tuple[str, str]] = set()
    for issue in issues:
        label = _label_for(labels, issue)
        if not label.is_error:
            continue
        sides = []
        if label.erroneous_side in (ErroneousSide.RTI, ErroneousSide.BOTH):
            sides.append(issue.rti_translation)
        if label.erroneous_side in (ErroneousSide.CONTAINER, ErroneousSide.BOTH):
            sides.append(issue.container_translation)
        for translation in sides:
            found.add((normalize_text(translation.request.text), translation.target_text))

    ordered = tuple(sorted(found))
    return UniqueErrors(count=len(ordered), translations=ordered)


def category_tally(labels: EvalLabels) -> Dict[ErrorCategory, int]:
    """Number of erroneous issues per error category (an issue may count in several)."""
    tally = {category: 0 for category in ErrorCategory}
    for label in labels.labels.values():
        if label.is_error:
            for category in set(label.categories):
                tally[category] += 1
    return tally


def threshold_sweep(
    translated_pairs: Sequence[TranslatedPair],
    d_values: Sequence[int],
    mode: TokenizationMode,
    labels: Optional[EvalLabels] = None
) -> List[SweepRow]:
    """Re-run detection for every d; precision columns only when labels are given."""
    if not d_values:
        raise ValidationError("threshold_sweep needs at least one d value")
    if any(d < 0 for d in d_values):
        raise ValidationError(f"d values must be non-negative: {list(d_values)}")

    rows: List[SweepRow] = []
    for d in d_values:
        issues = [
            issue for issue in (
                detect(tp.pair, tp.rti_translation, tp.container_translation, d, mode)
                for tp in translated_pairs
            ) if issue is not None
        ]
        if labels is None:
            rows.append(SweepRow(d=d, suspicious_count=len(issues)))
            continue
        if issues:
            result = precision(labels, issues)
            rows.append(SweepRow(d, len(issues), result.true_count, result.precision))
        else:
            rows.append(SweepRow(d, 0, 0, None))
        logger.debug(f"d={d}: {len(issues)} suspicious issues")

    return rows
