"""
Tests for bag-of-words construction, distance and detection.
"""

import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis.strategies import lists, sampled_from

# Add src to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from src.core.detector import BagOfWords, SuspiciousIssue, bag_of_words, bow_distance, detect
from src.core.exceptions import ModeMismatch, ValidationError
from src.core.models import PunctuationPolicy, TokenizationMode, TokenizationScheme
from tests.helpers import (
    BEIJING_RTI_ZH, BEIJING_SENTENCE, BEIJING_SENTENCE_ZH, make_pair, make_translation
)

VOCAB = ["a", "b", "c", "d", "e", "f"]


def brute_force_difference(left, right) -> int:
    """Remove matching occurrences one at a time and count what is left of ``left``."""
    remaining = list(right)
    missing = 0
    for token in left:
        if token in remaining:
            remaining.remove(token)
        else:
            missing += 1
    return missing


def bag(tokens, mode: TokenizationMode) -> BagOfWords:
    return BagOfWords(counts=Counter(tokens), mode=mode)


class TestBagOfWords:
    """Test cases for tokenization into multisets."""

    def test_whitespace_counts(self, whitespace_mode):
        bow = bag_of_words("we watched two movies and two basketball games", whitespace_mode)

        assert bow.counts["two"] == 2
        assert all(count == 1 for word, count in bow.counts.items() if word != "two")
        assert bow.size == 8

    def test_single_token(self, whitespace_mode):
        assert bag_of_words("books", whitespace_mode).counts == Counter({"books": 1})

    def test_case_folding_and_punctuation(self, whitespace_mode):
        bow = bag_of_words("Books, BOOKS! “books” --", whitespace_mode)
        assert bow.counts == Counter({"books": 3})

    def test_punctuation_kept(self):
        mode = TokenizationMode(punctuation_policy=PunctuationPolicy.KEEP)
        assert bag_of_words("books.", mode).counts == Counter({"books.": 1})

    def test_per_character(self, zh_mode):
        bow = bag_of_words("双边 会谈", zh_mode)
        assert bow.counts == Counter({"双": 1, "边": 1, "会": 1, "谈": 1})

    def test_per_character_strips_cjk_punctuation(self, zh_mode):
        assert bag_of_words("会谈。", zh_mode).size == 2
        keep = TokenizationMode(scheme=TokenizationScheme.PER_CHARACTER, punctuation_policy=PunctuationPolicy.KEEP)
        assert bag_of_words("会谈。", keep).size == 3


class TestBowDistance:
    """Test cases for the multiset-difference distance."""

    def test_worked_example(self, whitespace_mode):
        rti = bag_of_words("two interesting books", whitespace_mode)
        container = bag_of_words("we watch two movies and two basketball games", whitespace_mode)

        assert bow_distance(rti, container) == 2

    def test_missing_characters(self, zh_mode):
        assert bow_distance(bag_of_words(BEIJING_RTI_ZH, zh_mode), bag_of_words(BEIJING_SENTENCE_ZH, zh_mode)) == 2

    def test_identity(self, whitespace_mode):
        bow = bag_of_words("two interesting books and two pens", whitespace_mode)
        assert bow_distance(bow, bow) == 0

    def test_empty_container(self, whitespace_mode):
        rti = bag(["a", "b", "b"], whitespace_mode)
        assert bow_distance(rti, bag([], whitespace_mode)) == 3

    def test_mode_mismatch(self, whitespace_mode, zh_mode):
        with pytest.raises(ModeMismatch):
            bow_distance(bag_of_words("会谈", zh_mode), bag_of_words("talks", whitespace_mode))

    def test_matches_brute_force(self, whitespace_mode):
        rng = random.Random(2024)
        started = time.perf_counter()
        for _ in range(1000):
            left = [rng.choice(VOCAB) for _ in range(rng.randrange(0, 12))]
            right = [rng.choice(VOCAB) for _ in range(rng.randrange(0, 12))]
            assert bow_distance(bag(left, whitespace_mode), bag(right, whitespace_mode)) == \
                brute_force_difference(left, right)
        assert time.perf_counter() - started < 1.0

    @given(lists(sampled_from(VOCAB), max_size=15), lists(sampled_from(VOCAB), max_size=15),
           lists(sampled_from(VOCAB), max_size=5))
    def test_container_monotonicity(self, left, right, extra):
        mode = TokenizationMode()
        before = bow_distance(bag(left, mode), bag(right, mode))
        after = bow_distance(bag(left, mode), bag(right + extra, mode))
        assert after <= before

    @given(lists(sampled_from(VOCAB), max_size=15), lists(sampled_from(VOCAB), max_size=15),
           lists(sampled_from(VOCAB), max_size=5))
    def test_rti_monotonicity(self, left, right, extra):
        mode = TokenizationMode()
        before = bow_distance(bag(left, mode), bag(right, mode))
        after = bow_distance(bag(left + extra, mode), bag(right, mode))
        assert after >= before


class TestDetect:
    """Test cases for the distance-bound check."""

    @pytest.fixture
    def beijing(self):
        pair = make_pair("chummy bilateral talks", BEIJING_SENTENCE, sentence_id="beijing")
        return (
            pair,
            make_translation("chummy bilateral talks", BEIJING_RTI_ZH),
            make_translation(BEIJING_SENTENCE, BEIJING_SENTENCE_ZH),
        )

    @pytest.mark.parametrize("d", [0, 1])
    def test_reported_below_threshold(self, beijing, zh_mode, d):
        issue = detect(*beijing, d, zh_mode)

        assert issue is not None
        assert issue.distance == 2
        assert issue.threshold_used == d
        assert issue.missing_tokens == ("亲", "切")

    def test_strict_inequality(self, beijing, zh_mode):
        assert detect(*beijing, 2, zh_mode) is None

    def test_negative_threshold(self, beijing, zh_mode):
        with pytest.raises(ValidationError):
            detect(*beijing, -1, zh_mode)

    def test_translation_must_match_pair(self, beijing, zh_mode):
        pair, t_r, _ = beijing
        wrong = make_translation("something else entirely", "别的")
        with pytest.raises(ValidationError):
            detect(pair, t_r, wrong, 0, zh_mode)

    def test_issue_round_trip(self, beijing, zh_mode):
        issue = detect(*beijing, 0, zh_mode)
        restored = SuspiciousIssue.from_dict(issue.to_dict())

        assert restored.issue_id == issue.issue_id
        assert restored.to_dict() == issue.to_dict()
