"""
Shared fixtures for the test suite.
"""

import sys
from pathlib import Path

import pytest

# Add src to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from src.core.models import FilterConfig, PunctuationPolicy, TokenizationMode, TokenizationScheme
from src.translation.mock import load_dictionary
from tests.helpers import DEMO_DICTIONARY


@pytest.fixture
def filter_config() -> FilterConfig:
    return FilterConfig()


@pytest.fixture
def zh_mode() -> TokenizationMode:
    return TokenizationMode(scheme=TokenizationScheme.PER_CHARACTER, punctuation_policy=PunctuationPolicy.STRIP)


@pytest.fixture
def whitespace_mode() -> TokenizationMode:
    return TokenizationMode()


@pytest.fixture
def demo_dictionary():
    return load_dictionary(str(DEMO_DICTIONARY))
