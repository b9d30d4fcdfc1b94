#!/usr/bin/env python3
"""Planted-lexicon recovery experiment.

Generates balanced synthetic corpora from a hidden word->polarity assignment,
trains GASA, and reports training accuracy and how many planted polarity
signs the evolved chromosome recovered.
"""

import argparse
import random

from evosent.corpus import build_unknown_index, word_frequencies
from evosent.evaluator import Semantics
from evosent.experiments import generate_synthetic_corpus, random_planted_lexicon
from evosent.ga_engine import GAConfig, run_ga
from evosent.gasa import GasaProblem, extract_classifications
from evosent.lexicon import Dictionary, Kind, seed_amplifier_dictionary


def run_seed(seed: int, args) -> tuple:
    data_rng = random.Random(args.data_seed_base + seed)
    lexicon = random_planted_lexicon(args.planted_words, args.filler_words, data_rng)
    corpus = generate_synthetic_corpus(
        lexicon,
        args.instances,
        (args.min_length, args.max_length),
        Semantics(args.semantics),
        data_rng,
    )
    sentiment_dict = Dictionary({}, Kind.SENTIMENT)
    amplifier_dict = seed_amplifier_dictionary()
    index = build_unknown_index(corpus, sentiment_dict, amplifier_dict)
    problem = GasaProblem(
        corpus, index, sentiment_dict, amplifier_dict, Semantics(args.semantics)
    )
    best, stats = run_ga(problem, GAConfig(seed=seed))
    planted = sorted(lexicon.entries)
    genes = extract_classifications(best.genome, planted, index)
    recovered = sum(
        1
        for word, gene in zip(planted, genes)
        if gene.kind is Kind.SENTIMENT
        and gene.value != 0.0
        and (gene.value > 0.0) == (lexicon.entries[word].value > 0.0)
    )
    min_freq = min(word_frequencies(corpus)[w] for w in planted)
    return (
        best.fitness / len(corpus),
        recovered / len(planted),
        stats.generations_executed,
        min_freq,
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--data-seed-base", type=int, default=1000)
    parser.add_argument("--instances", type=int, default=500)
    parser.add_argument("--planted-words", type=int, default=30)
    parser.add_argument("--filler-words", type=int, default=10)
    parser.add_argument("--min-length", type=int, default=3)
    parser.add_argument("--max-length", type=int, default=8)
    parser.add_argument(
        "--semantics", choices=[s.value for s in Semantics], default="literal"
    )
    args = parser.parse_args()

    print(f"{'seed':>4}  {'train_acc':>9}  {'sign_rec':>8}  {'gens':>5}  {'min_freq':>8}")
    accs, recs = [], []
    for seed in range(args.seeds):
        acc, rec, gens, min_freq = run_seed(seed, args)
        accs.append(acc)
        recs.append(rec)
        print(f"{seed:>4}  {acc:>9.3f}  {rec:>8.3f}  {gens:>5}  {min_freq:>8}")
    print(f"mean  {sum(accs) / len(accs):>9.3f}  {sum(recs) / len(recs):>8.3f}")


if __name__ == "__main__":
    main()
