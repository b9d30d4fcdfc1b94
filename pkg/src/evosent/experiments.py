"""Experiment protocols: word-level cross-validation, holdout accuracy,
instance-level cross-validation and the synthetic planted-lexicon generator
used as the verifiable oracle for the whole pipeline.
"""

from __future__ import annotations

import enum
import os
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

from .cagasa import CagasaProblem
from .corpus import (
    Corpus,
    Instance,
    Label,
    build_unknown_index,
    make_folds,
    split_holdout,
    word_frequencies,
)
from .evaluator import Semantics, Verdict, classify_score, evaluate_sentence
from .ga_engine import GAConfig, run_ga
from .gasa import GasaProblem, extract_classifications
from .lexicon import (
    NEUTRAL_PAIR,
    ClassificationValuePair,
    Dictionary,
    Kind,
    check_disjoint,
)


class Protocol(enum.Enum):
    SENT_VS_AMP = "sent-vs-amp"
    POLARITY_VALUE = "polarity-value"
    HOLDOUT_ACCURACY = "holdout-accuracy"
    GASA_VS_CAGASA = "gasa-vs-cagasa"


class Algo(enum.Enum):
    GASA = "gasa"
    CAGASA = "cagasa"


@dataclass
class ExperimentReport:
    protocol: Protocol
    fold_accuracies: Tuple[float, ...]
    mean_accuracy: float
    config: GAConfig
    semantics: Semantics
    freq_threshold: Optional[int] = None
    words_considered: Optional[int] = None
    fold_word_counts: Tuple[int, ...] = ()
    extras: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class PlantedLexicon:
    """Ground-truth word -> pair assignment; fillers are all neutral."""

    entries: dict
    fillers: frozenset

    def resolve(self, word: str) -> ClassificationValuePair:
        pair = self.entries.get(word)
        if pair is not None:
            return pair
        if word in self.fillers:
            return NEUTRAL_PAIR
        raise KeyError(f"word {word!r} is not in the planted lexicon")


class GenerationError(RuntimeError):
    """The synthetic generator exhausted its retry budget."""


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def _make_problem(algo, corpus, index, sentiment_dict, amplifier_dict, semantics):
    cls = GasaProblem if algo is Algo.GASA else CagasaProblem
    return cls(corpus, index, sentiment_dict, amplifier_dict, semantics)


def _filtered_dictionary_words(
    corpus: Corpus, sentiment_dict: Dictionary, freq_threshold: int
) -> list:
    """Dictionary words occurring at least `freq_threshold` times (at least
    once when the threshold is zero), in sorted order."""
    freqs = word_frequencies(corpus)
    minimum = max(freq_threshold, 1)
    return sorted(w for w in sentiment_dict.entries if freqs.get(w, 0) >= minimum)


def _run_word_cv(
    protocol: Protocol,
    corpus: Corpus,
    sentiment_dict: Dictionary,
    amplifier_dict: Dictionary,
    freq_threshold: int,
    k: int,
    config: GAConfig,
    semantics: Semantics,
    word_correct,
) -> ExperimentReport:
    check_disjoint(sentiment_dict, amplifier_dict)
    words = _filtered_dictionary_words(corpus, sentiment_dict, freq_threshold)
    if not words:
        raise ValueError(
            f"no dictionary words pass the frequency threshold {freq_threshold}"
        )
    folds = make_folds(words, k, config.seed)
    fold_accuracies = []
    fold_word_counts = []
    for fold_idx, test_words in enumerate(folds):
        fold_dict = sentiment_dict.without(test_words)
        index = build_unknown_index(corpus, fold_dict, amplifier_dict)
        problem = _make_problem(
            Algo.GASA, corpus, index, fold_dict, amplifier_dict, semantics
        )
        fold_config = replace(config, seed=config.seed + fold_idx)
        best, _ = run_ga(problem, fold_config)
        genes = extract_classifications(best.genome, test_words, index)
        correct = sum(
            1
            for word, gene in zip(test_words, genes)
            if word_correct(word, gene, sentiment_dict)
        )
        fold_accuracies.append(correct / len(test_words))
        fold_word_counts.append(len(test_words))
    return ExperimentReport(
        protocol=protocol,
        fold_accuracies=tuple(fold_accuracies),
        mean_accuracy=_mean(fold_accuracies),
        config=config,
        semantics=semantics,
        freq_threshold=freq_threshold,
        words_considered=len(words),
        fold_word_counts=tuple(fold_word_counts),
    )


def run_sent_vs_amp_cv(
    corpus: Corpus,
    sentiment_dict: Dictionary,
    amplifier_dict: Dictionary,
    freq_threshold: int,
    k: int,
    config: GAConfig,
    semantics: Semantics = Semantics.LITERAL,
) -> ExperimentReport:
    """Held-out dictionary words are correct when their learned gene has the
    sentiment kind (every sentiment-dictionary word is a sentiment word)."""

    def correct(word, gene, _dictionary):
        return gene.kind is Kind.SENTIMENT

    return _run_word_cv(
        Protocol.SENT_VS_AMP,
        corpus,
        sentiment_dict,
        amplifier_dict,
        freq_threshold,
        k,
        config,
        semantics,
        correct,
    )


def run_polarity_value_cv(
    corpus: Corpus,
    sentiment_dict: Dictionary,
    amplifier_dict: Dictionary,
    freq_threshold: int,
    k: int,
    config: GAConfig,
    semantics: Semantics = Semantics.LITERAL,
) -> ExperimentReport:
    """Held-out words are correct when the gene is a sentiment pair whose
    sign matches the dictionary polarity; amplifier or zero-valued genes
    count as errors."""

    def correct(word, gene, dictionary):
        if gene.kind is not Kind.SENTIMENT or gene.value == 0.0:
            return False
        truth = dictionary.get(word)
        return (gene.value > 0.0) == (truth.value > 0.0)

    return _run_word_cv(
        Protocol.POLARITY_VALUE,
        corpus,
        sentiment_dict,
        amplifier_dict,
        freq_threshold,
        k,
        config,
        semantics,
        correct,
    )


def _test_accuracy(problem, best_genome, test_corpus) -> Tuple[float, Dict[str, float]]:
    counts = {
        "true_positive": 0,
        "true_negative": 0,
        "false_positive": 0,
        "false_negative": 0,
        "ties": 0,
    }
    correct = 0
    for inst in test_corpus.instances:
        verdict = problem.predict(best_genome, inst)
        if verdict is Verdict.TIE:
            counts["ties"] += 1
        elif verdict.value == inst.label.value:
            correct += 1
            key = "true_positive" if inst.label is Label.POSITIVE else "true_negative"
            counts[key] += 1
        else:
            key = "false_positive" if verdict is Verdict.POSITIVE else "false_negative"
            counts[key] += 1
    accuracy = correct / len(test_corpus.instances) if len(test_corpus) else 0.0
    return accuracy, {k: float(v) for k, v in counts.items()}


def run_holdout_accuracy(
    corpus: Corpus,
    sentiment_dict: Dictionary,
    amplifier_dict: Dictionary,
    config: GAConfig,
    semantics: Semantics = Semantics.LITERAL,
    algo: Algo = Algo.GASA,
    train_fraction: float = 0.7,
) -> ExperimentReport:
    check_disjoint(sentiment_dict, amplifier_dict)
    train, test = split_holdout(corpus, train_fraction, config.seed)
    index = build_unknown_index(train, sentiment_dict, amplifier_dict)
    problem = _make_problem(algo, train, index, sentiment_dict, amplifier_dict, semantics)
    best, stats = run_ga(problem, config)
    accuracy, counts = _test_accuracy(problem, best.genome, test)
    extras = dict(counts)
    extras["train_fitness"] = float(best.fitness)
    extras["train_instances"] = float(len(train))
    extras["test_instances"] = float(len(test))
    extras["generations_executed"] = float(stats.generations_executed)
    return ExperimentReport(
        protocol=Protocol.HOLDOUT_ACCURACY,
        fold_accuracies=(accuracy,),
        mean_accuracy=accuracy,
        config=config,
        semantics=semantics,
        extras=extras,
    )


def run_instance_cv(
    corpus: Corpus,
    sentiment_dict: Dictionary,
    amplifier_dict: Dictionary,
    k: int,
    config: GAConfig,
    semantics: Semantics = Semantics.LITERAL,
    algo: Algo = Algo.GASA,
) -> ExperimentReport:
    """k-fold cross-validation over instances (the GASA vs CA-GASA protocol)."""
    check_disjoint(sentiment_dict, amplifier_dict)
    folds = make_folds(list(corpus.instances), k, config.seed)
    fold_accuracies = []
    for fold_idx, test_instances in enumerate(folds):
        held_out = set(id(inst) for inst in test_instances)
        train_instances = [i for i in corpus.instances if id(i) not in held_out]
        train = Corpus(tuple(train_instances), corpus.provenance)
        test = Corpus(tuple(test_instances), corpus.provenance)
        index = build_unknown_index(train, sentiment_dict, amplifier_dict)
        problem = _make_problem(
            algo, train, index, sentiment_dict, amplifier_dict, semantics
        )
        fold_config = replace(config, seed=config.seed + fold_idx)
        best, _ = run_ga(problem, fold_config)
        accuracy, _counts = _test_accuracy(problem, best.genome, test)
        fold_accuracies.append(accuracy)
    return ExperimentReport(
        protocol=Protocol.GASA_VS_CAGASA,
        fold_accuracies=tuple(fold_accuracies),
        mean_accuracy=_mean(fold_accuracies),
        config=config,
        semantics=semantics,
    )


def random_planted_lexicon(
    n_sentiment: int, n_fillers: int, rng: random.Random
) -> PlantedLexicon:
    """Planted sentiment words with alternating polarity plus neutral fillers."""
    entries = {}
    for i in range(n_sentiment):
        value = 1.0 if i % 2 == 0 else -1.0
        entries[f"pw{i:03d}"] = ClassificationValuePair(Kind.SENTIMENT, value)
    fillers = frozenset(f"fw{i:03d}" for i in range(n_fillers))
    return PlantedLexicon(entries, fillers)


def generate_synthetic_corpus(
    lexicon: PlantedLexicon,
    n_instances: int,
    length_range: Tuple[int, int],
    semantics: Semantics,
    rng: random.Random,
) -> Corpus:
    """Sample label-balanced sentences from the planted vocabulary; sentences
    scoring zero under the ground truth are resampled."""
    if not lexicon.entries:
        raise ValueError("planted lexicon is empty")
    if n_instances % 2 != 0:
        raise ValueError("n_instances must be even for a balanced corpus")
    lo, hi = length_range
    if not 1 <= lo <= hi:
        raise ValueError(f"bad length range {length_range}")
    vocabulary = sorted(lexicon.entries) + sorted(lexicon.fillers)
    half = n_instances // 2
    positives, negatives = [], []
    budget = 10 * n_instances
    draws = 0
    while (len(positives) < half or len(negatives) < half) and draws < budget:
        draws += 1
        length = rng.randint(lo, hi)
        tokens = tuple(vocabulary[rng.randrange(len(vocabulary))] for _ in range(length))
        score = evaluate_sentence(tokens, lexicon.resolve, semantics)
        if score > 0.0 and len(positives) < half:
            positives.append(Instance(tokens, Label.POSITIVE))
        elif score < 0.0 and len(negatives) < half:
            negatives.append(Instance(tokens, Label.NEGATIVE))
    if len(positives) < half or len(negatives) < half:
        raise GenerationError(
            f"could not balance {n_instances} instances within {budget} draws"
        )
    interleaved = []
    for pos, neg in zip(positives, negatives):
        interleaved.append(pos)
        interleaved.append(neg)
    return Corpus(tuple(interleaved), "synthetic")


def _config_fields(config: GAConfig):
    yield "population_size", str(config.population_size)
    yield "tournament_size", str(config.tournament_size)
    yield "max_generations", str(config.max_generations)
    yield "crossover_rate", f"{config.crossover_rate:.6f}"
    yield "mutation_rate", f"{config.mutation_rate:.6f}"
    yield "seed", str(config.seed)


def report_records(report: ExperimentReport):
    yield "protocol", report.protocol.value
    yield "semantics", report.semantics.value
    for key, value in _config_fields(report.config):
        yield key, value
    if report.freq_threshold is not None:
        yield "freq_threshold", str(report.freq_threshold)
    if report.words_considered is not None:
        yield "words_considered", str(report.words_considered)
    for i, count in enumerate(report.fold_word_counts):
        yield f"fold_{i}_words", str(count)
    for i, accuracy in enumerate(report.fold_accuracies):
        yield f"fold_{i}_accuracy", f"{accuracy:.6f}"
    yield "mean_accuracy", f"{report.mean_accuracy:.6f}"
    for key in sorted(report.extras):
        yield key, f"{report.extras[key]:.6f}"


def write_report(report: ExperimentReport, sink: Union[str, Path]) -> None:
    with open(sink, "w", encoding="utf-8") as fh:
        for key, value in report_records(report):
            fh.write(f"{key}\t{value}\n")


def format_report(report: ExperimentReport) -> str:
    """Human-readable aligned table of the report fields."""
    records = list(report_records(report))
    width = max(len(key) for key, _ in records)
    return "\n".join(f"{key:<{width}}  {value}" for key, value in records)
