import random

import pytest

from evosent.corpus import Corpus, Instance, Label
from evosent.lexicon import ClassificationValuePair, Dictionary, Kind


def S(value: float) -> ClassificationValuePair:
    return ClassificationValuePair(Kind.SENTIMENT, value)


def A(value: float) -> ClassificationValuePair:
    return ClassificationValuePair(Kind.AMPLIFIER, value)


def make_corpus(rows) -> Corpus:
    """rows: iterable of (tokens, 'positive'|'negative')."""
    return Corpus(
        tuple(Instance(tuple(tokens), Label(label)) for tokens, label in rows)
    )


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
