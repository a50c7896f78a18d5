"""
Builders and golden inputs shared by the tests.
"""

from pathlib import Path

from src.core.models import ContainerKind, TranslationOrigin
from src.nlp.rti_extractor import Rti, RtiPair
from src.translation.models import Translation, TranslationRequest

REPO_ROOT = Path(__file__).parent.parent
DATA_DIR = REPO_ROOT / "data"
STOPWORDS_FILE = REPO_ROOT / "config" / "stopwords.txt"
DEMO_CORPUS = DATA_DIR / "corpora" / "mock_demo.jsonl"
DEMO_DICTIONARY = DATA_DIR / "mock" / "en_zh_dictionary.json"

HOLMES_SENTENCE = "Holmes will portray Holmes in a movie based on Bad Blood"
HOLMES_TREE = (
    "(S (NP (NNP Holmes)) (VP (MD will) (VP (VB portray) (NP (NP (NNP Holmes)) "
    "(PP (IN in) (NP (NP (DT a) (NN movie)) (VP (VBN based) (PP (IN on) "
    "(NP (NNP Bad) (NNP Blood))))))))))"
)

BEIJING_SENTENCE = "The leaders held chummy bilateral talks in Beijing ."
BEIJING_TREE = (
    "(S (NP (DT The) (NNS leaders)) (VP (VBD held) (NP (JJ chummy) (JJ bilateral) "
    "(NNS talks)) (PP (IN in) (NP (NNP Beijing)))) (. .))"
)
BEIJING_RTI_ZH = "亲切双边会谈"
BEIJING_SENTENCE_ZH = "领导人在北京举行了双边会谈。"
BEIJING_ISSUE_ID = "603b914ab8289438"


def make_pair(rti_text: str, container_text: str, sentence_id: str = "s1", index: int = 0,
              kind: ContainerKind = ContainerKind.FULL_SENTENCE) -> RtiPair:
    words = rti_text.split()
    rti = Rti(sentence_id=sentence_id, span=(0, len(words)), text=rti_text, node_path=(0,))
    return RtiPair(rti=rti, container_text=container_text, container_kind=kind,
                   pair_id=f"{sentence_id}#{index}")


def make_translation(source: str, target: str, backend_id: str = "recorded") -> Translation:
    request = TranslationRequest(text=source, src_lang="en", tgt_lang="zh", backend_id=backend_id)
    return Translation(request=request, target_text=target, origin=TranslationOrigin.CACHE)
