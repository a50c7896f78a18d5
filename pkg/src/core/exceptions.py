"""
Custom exceptions for the referential transparency translation checker.

Every failure the pipeline can report derives from TransparencyCheckError,
so the command line can map them to a single exit code.
"""

from typing import Any, Optional


class TransparencyCheckError(Exception):
    """Base exception class for the checker."""

    def __init__(self, message: str, error_code: Optional[str] = None):
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)


class ConfigurationError(TransparencyCheckError):
    """Raised when there's a configuration-related error."""
    pass


class ValidationError(TransparencyCheckError):
    """Raised when input validation fails."""
    pass


# Treebank parsing

class TreeParseError(TransparencyCheckError):
    """Raised when a bracketed tree cannot be parsed."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})", error_code=type(self).__name__)


class UnbalancedBrackets(TreeParseError):
    pass


class EmptyLabel(TreeParseError):
    pass


class EmptyTree(TreeParseError):
    pass


class EmptyConstituent(TreeParseError):
    """Trace leaves and -NONE- constituents are not accepted."""
    pass


# Translation gateway

class GatewayError(TransparencyCheckError):
    """Raised when a translation cannot be obtained."""
    pass


class CacheMiss(GatewayError):

    def __init__(self, text: str):
        self.text = text
        super().__init__(f"No cached translation for {text!r} in replay-only mode", "CACHE_MISS")


class NetworkFailure(GatewayError):

    def __init__(self, status: Optional[int], body_excerpt: str):
        self.status = status
        self.body_excerpt = body_excerpt
        super().__init__(f"Translation request failed (status={status}): {body_excerpt}", "NETWORK_FAILURE")


class EmptyTranslation(GatewayError):

    def __init__(self, text: str):
        self.text = text
        super().__init__(f"Backend returned an empty translation for {text!r}", "EMPTY_TRANSLATION")


class CacheConflict(GatewayError):

    def __init__(self, existing: Any, incoming: Any):
        self.existing = existing
        self.incoming = incoming
        super().__init__(
            f"Conflicting cache entry: existing={existing!r} incoming={incoming!r}",
            "CACHE_CONFLICT"
        )


class UnknownToken(GatewayError):

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"Token {token!r} missing from the mock dictionary", "UNKNOWN_TOKEN")


# Detection

class DetectorError(TransparencyCheckError):
    pass


class ModeMismatch(DetectorError):

    def __init__(self, left: Any, right: Any):
        super().__init__(f"Bags built with different tokenization modes: {left} vs {right}", "MODE_MISMATCH")


# Evaluation

class EvaluationError(TransparencyCheckError):
    pass


class EmptyIssueSet(EvaluationError):

    def __init__(self):
        super().__init__("Precision is undefined for an empty issue set", "EMPTY_ISSUE_SET")


class UnlabeledIssue(EvaluationError):

    def __init__(self, issue_id: str):
        self.issue_id = issue_id
        super().__init__(f"Issue {issue_id} has no label", "UNLABELED_ISSUE")


class LabelsFormatError(EvaluationError):
    pass


# Pipeline

class PipelineError(TransparencyCheckError):
    pass


class CorpusFormatError(PipelineError):

    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"Corpus line {line}: {reason}", "CORPUS_FORMAT")


class YieldMismatch(PipelineError):

    def __init__(self, sentence_id: str, text: str, tree_yield: str):
        self.sentence_id = sentence_id
        super().__init__(
            f"Sentence {sentence_id}: tree yield {tree_yield!r} does not match text {text!r}",
            "YIELD_MISMATCH"
        )


# Reports

class ReportError(TransparencyCheckError):
    """Raised when a report or table cannot be written."""
    pass


class ReportFormatError(ReportError):

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"Report {path} is malformed: {reason}", "REPORT_FORMAT")
