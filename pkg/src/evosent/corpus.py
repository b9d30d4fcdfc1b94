"""Tokenization, labeled-corpus ingestion, unknown-word discovery and splits."""

from __future__ import annotations

import enum
import logging
import os
import random
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .lexicon import Dictionary

logger = logging.getLogger(__name__)


class Label(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Instance:
    tokens: tuple
    label: Label


@dataclass(frozen=True)
class Corpus:
    instances: tuple
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.instances)


@dataclass(frozen=True)
class UnknownWordIndex:
    """Frozen first-occurrence ordering of the corpus words absent from both
    dictionaries; gene i of every chromosome corresponds to words[i]."""

    words: tuple
    position_of: dict

    def __len__(self) -> int:
        return len(self.words)


class CorpusParseError(ValueError):
    """A corpus file line could not be parsed."""


# A token is a maximal run of letters, digits or apostrophes; everything
# else (including underscore) splits. No stop-word filtering.
_TOKEN_RE = re.compile(r"(?:[^\W_]|')+", re.UNICODE)


def tokenize(text: str) -> list:
    return _TOKEN_RE.findall(text.lower())


def load_corpus(source: Union[str, Path], provenance: str = "") -> Corpus:
    """Load a `label<TAB>text` file; instances that tokenize to nothing are
    skipped with a warning."""
    instances = []
    skipped = 0
    name = provenance or os.path.basename(str(source))
    with open(source, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t", 1)
            if len(parts) != 2:
                raise CorpusParseError(f"line {lineno}: expected `label<TAB>text`")
            label_text, text = parts
            try:
                label = Label(label_text.strip().lower())
            except ValueError:
                raise CorpusParseError(
                    f"line {lineno}: unknown label {label_text!r}"
                ) from None
            tokens = tokenize(text)
            if not tokens:
                skipped += 1
                continue
            instances.append(Instance(tuple(tokens), label))
    if skipped:
        logger.warning("%s: skipped %d instance(s) with no tokens", name, skipped)
    return Corpus(tuple(instances), name)


def save_corpus(corpus: Corpus, sink: Union[str, Path]) -> None:
    with open(sink, "w", encoding="utf-8") as fh:
        for inst in corpus.instances:
            fh.write(f"{inst.label.value}\t{' '.join(inst.tokens)}\n")


def concat_corpora(corpora: Sequence[Corpus], provenance: str = "combined") -> Corpus:
    instances = []
    for corpus in corpora:
        instances.extend(corpus.instances)
    return Corpus(tuple(instances), provenance)


def build_unknown_index(
    corpus: Corpus, sentiment_dict: Dictionary, amplifier_dict: Dictionary
) -> UnknownWordIndex:
    """Collect corpus words in neither dictionary, in first-occurrence order."""
    words = []
    position_of = {}
    for inst in corpus.instances:
        for word in inst.tokens:
            if word in position_of or word in sentiment_dict or word in amplifier_dict:
                continue
            position_of[word] = len(words)
            words.append(word)
    return UnknownWordIndex(tuple(words), position_of)


def word_frequencies(corpus: Corpus) -> Counter:
    """Token occurrence counts across all instances."""
    counts = Counter()
    for inst in corpus.instances:
        counts.update(inst.tokens)
    return counts


def _as_rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def make_folds(items: Sequence, k: int, seed) -> list:
    """Shuffle and partition into k folds whose sizes differ by at most one."""
    if k < 2:
        raise ValueError(f"need at least 2 folds, got {k}")
    if len(items) < k:
        raise ValueError(f"cannot split {len(items)} items into {k} folds")
    rng = _as_rng(seed)
    shuffled = list(items)
    rng.shuffle(shuffled)
    return [shuffled[i::k] for i in range(k)]


def split_holdout(corpus: Corpus, train_fraction: float, seed) -> tuple:
    """Label-stratified holdout split; classes are shuffled and split
    independently, then interleaved."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    by_label = {Label.POSITIVE: [], Label.NEGATIVE: []}
    for inst in corpus.instances:
        by_label[inst.label].append(inst)
    for label, group in by_label.items():
        if not group:
            raise ValueError(f"corpus has no {label.value} instances")
    rng = _as_rng(seed)
    train_parts, test_parts = [], []
    for label in (Label.POSITIVE, Label.NEGATIVE):
        group = list(by_label[label])
        rng.shuffle(group)
        n_train = int(len(group) * train_fraction + 0.5)
        train_parts.append(group[:n_train])
        test_parts.append(group[n_train:])
    return (
        Corpus(tuple(_interleave(train_parts)), corpus.provenance),
        Corpus(tuple(_interleave(test_parts)), corpus.provenance),
    )


def _interleave(groups) -> list:
    out = []
    longest = max(len(g) for g in groups)
    for i in range(longest):
        for group in groups:
            if i < len(group):
                out.append(group[i])
    return out
