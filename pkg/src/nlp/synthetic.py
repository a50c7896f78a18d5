"""
Synthetic corpora for desk-scale runs.

Generates parsed English sentences with nested noun phrases from a fixed
vocabulary, plus a word-to-character dictionary for the compositional mock
translator. Each vocabulary word maps to its own CJK character, so the
dictionary is injective at the character level.
"""

import json
import random
from pathlib import Path
from typing import Dict, List

ADJECTIVES = [
    "chummy", "bilateral", "ancient", "quiet", "golden", "rural", "modern",
    "fragile", "bright", "secret", "northern", "wooden", "urgent", "silent",
    "famous", "hidden", "narrow", "vast", "gentle", "rapid",
]
NOUNS = [
    "talks", "farmers", "rivers", "bridges", "letters", "engines", "gardens",
    "markets", "songs", "tools", "villages", "ships", "paintings", "reports",
    "stones", "forests", "lamps", "roads", "clocks", "towers",
]
SUBJECTS = ["leaders", "engineers", "students", "officials", "artists", "doctors", "pilots", "teachers"]
VERBS = ["held", "built", "found", "painted", "repaired", "visited", "studied", "carried", "described", "admired"]
PREPOSITIONS = ["with", "from", "of"]
FUNCTION_WORDS = ["the"]

# Consecutive ideographs from the start of the CJK Unified Ideographs block
_CJK_BASE = 0x4E00


def vocabulary() -> List[str]:
    """Every source word the generator can emit, in a fixed order."""
    return FUNCTION_WORDS + PREPOSITIONS + SUBJECTS + VERBS + ADJECTIVES + NOUNS


def build_dictionary() -> Dict[str, str]:
    """Injective word -> single-character dictionary covering the vocabulary."""
    dictionary = {word: chr(_CJK_BASE + index) for index, word in enumerate(vocabulary())}
    dictionary["."] = "。"
    return dictionary


def _simple_np(rng: random.Random) -> str:
    return (
        f"(NP (JJ {rng.choice(ADJECTIVES)}) (JJ {rng.choice(ADJECTIVES)}) "
        f"(NNS {rng.choice(NOUNS)}))"
    )


def _object_np(rng: random.Random) -> str:
    shape = rng.randrange(3)
    if shape == 0:
        return _simple_np(rng)
    prep = rng.choice(PREPOSITIONS)
    if shape == 1:
        inner = f"(NP (DT the) (JJ {rng.choice(ADJECTIVES)}) (NNS {rng.choice(NOUNS)}))"
    else:
        inner = _simple_np(rng)
    return f"(NP {_simple_np(rng)} (PP (IN {prep}) {inner}))"


def _subject_np(rng: random.Random) -> str:
    if rng.random() < 0.5:
        return f"(NP (DT The) (NNS {rng.choice(SUBJECTS)}))"
    return (
        f"(NP (DT The) (JJ {rng.choice(ADJECTIVES)}) (JJ {rng.choice(ADJECTIVES)}) "
        f"(NNS {rng.choice(SUBJECTS)}))"
    )


def _leaves(tree: str) -> List[str]:
    # Leaves are the tokens directly followed by ')'
    return [part.rstrip(")") for part in tree.split() if part.endswith(")") and not part.startswith("(")]


def generate_corpus(sentences: int, seed: int = 0) -> List[Dict[str, str]]:
    """Corpus records ``{id, text, tree}``; identical for identical (sentences, seed)."""
    rng = random.Random(seed)
    records = []
    for index in range(sentences):
        tree = (
            f"(S {_subject_np(rng)} (VP (VBD {rng.choice(VERBS)}) {_object_np(rng)}) (. .))"
        )
        records.append({
            "id": f"syn-{index:04d}",
            "text": " ".join(_leaves(tree)),
            "tree": tree,
        })
    return records


def write_corpus(records: List[Dict[str, str]], path: str):
    """Write records as JSONL."""
    corpus_file = Path(path)
    corpus_file.parent.mkdir(parents=True, exist_ok=True)
    with open(corpus_file, 'w', encoding='utf-8') as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")


def write_dictionary(dictionary: Dict[str, str], path: str):
    dictionary_file = Path(path)
    dictionary_file.parent.mkdir(parents=True, exist_ok=True)
    with open(dictionary_file, 'w', encoding='utf-8') as f:
        json.dump(dictionary, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")
