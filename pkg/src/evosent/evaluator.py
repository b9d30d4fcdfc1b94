"""Arithmetic sentence scoring: sentiment words accumulate, amplifiers scale.

Two semantics modes are provided because the accumulation rule admits two
readings that differ in when the amplifier accumulator is consumed:

* LITERAL: the amplifier accumulator is never reset; after the loop it is
  added to the score whenever it is nonzero.
* PROSE: the accumulator resets to zero once it has been applied to a
  sentiment word, and the trailing addition happens only when the final
  token is an amplifier.

All reachable values are sums and products of halves, so double-precision
arithmetic is exact.
"""

from __future__ import annotations

import enum
from typing import Callable, Sequence

from .corpus import Label
from .lexicon import ClassificationValuePair, Kind


class Semantics(enum.Enum):
    LITERAL = "literal"
    PROSE = "prose"


class Verdict(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    TIE = "tie"


def evaluate_pairs(
    pairs: Sequence[ClassificationValuePair],
    semantics: Semantics = Semantics.LITERAL,
) -> float:
    """Score a sequence of already-resolved classification-value pairs."""
    sentiment = 0.0
    amplifier = 0.0
    for pair in pairs:
        if pair.kind is Kind.AMPLIFIER:
            amplifier += pair.value
        else:
            if amplifier != 0.0:
                sentiment += amplifier * pair.value
                if semantics is Semantics.PROSE:
                    amplifier = 0.0
            else:
                sentiment += pair.value
    if semantics is Semantics.LITERAL:
        if amplifier != 0.0:
            sentiment += amplifier
    elif pairs and pairs[-1].kind is Kind.AMPLIFIER:
        sentiment += amplifier
    return sentiment


def evaluate_sentence(
    tokens: Sequence[str],
    resolve: Callable[[str], ClassificationValuePair],
    semantics: Semantics = Semantics.LITERAL,
) -> float:
    """Resolve every token to its pair and score the sentence."""
    return evaluate_pairs([resolve(word) for word in tokens], semantics)


def classify_score(score: float) -> Verdict:
    if score > 0.0:
        return Verdict.POSITIVE
    if score < 0.0:
        return Verdict.NEGATIVE
    return Verdict.TIE


def verdict_matches(verdict: Verdict, label: Label) -> bool:
    """A tie never matches: the model failed to commit to a polarity."""
    return verdict.value == label.value
