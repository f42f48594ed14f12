from functools import lru_cache
from pathlib import Path

from qa.facts import load_facts
from qa.lexicon import load_lexicon

CORPUS_DIR = Path(__file__).resolve().parent.parent / 'corpus'
FACTS_PATH = CORPUS_DIR / 'seastory.facts'
LEXICON_PATH = CORPUS_DIR / 'english.lex'


@lru_cache(maxsize=None)
def english():
    return load_lexicon(LEXICON_PATH)


@lru_cache(maxsize=None)
def sea_story():
    return load_facts(FACTS_PATH, english())


def corpus_lines(name):
    """Non-blank, non-comment lines of a corpus file."""
    lines = (CORPUS_DIR / name).read_text(encoding='utf-8').splitlines()
    return [line for line in lines if line.strip() and not line.startswith('#')]
