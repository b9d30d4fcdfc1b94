"""Problem-agnostic generational genetic algorithm.

Replacement is wholesale (no elitism); the best-ever individual across all
generations, including the random initial population, is what gets returned.
All randomness flows from a single seeded stream in a fixed draw order:
initial genomes, then per generation the dispatch coin, tournament draws
and operator randomness for each offspring production.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, List, Optional, Protocol, Sequence, Tuple


@dataclass
class GAConfig:
    population_size: int = 200
    tournament_size: int = 7
    max_generations: int = 500
    crossover_rate: float = 0.60
    mutation_rate: float = 0.40
    seed: int = 0

    def validate(self) -> None:
        if self.population_size < 1:
            raise ValueError("population_size must be positive")
        if not 1 <= self.tournament_size <= self.population_size:
            raise ValueError("tournament_size must be in [1, population_size]")
        if self.max_generations < 0:
            raise ValueError("max_generations must be non-negative")
        if not math.isclose(self.crossover_rate + self.mutation_rate, 1.0):
            raise ValueError("crossover_rate + mutation_rate must equal 1.0")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be a probability")


@dataclass
class EvaluatedIndividual:
    genome: Any
    fitness: int


@dataclass
class RunStats:
    generations_executed: int = 0
    best_fitness_per_generation: List[int] = field(default_factory=list)
    terminated_early: bool = False


class GAProblem(Protocol):
    def random_genome(self, rng: random.Random) -> Any: ...

    def fitness(self, genome: Any) -> int: ...

    def mutate(self, genome: Any, rng: random.Random) -> Any: ...

    def crossover(self, g1: Any, g2: Any, rng: random.Random) -> Tuple[Any, Any]: ...


def tournament_select(
    population: Sequence[EvaluatedIndividual], k: int, rng: random.Random
) -> EvaluatedIndividual:
    """Draw k individuals uniformly with replacement, return a fittest one;
    ties are broken uniformly at random among the tied maxima."""
    if not population:
        raise ValueError("cannot select from an empty population")
    if k < 1:
        raise ValueError("tournament size must be at least 1")
    n = len(population)
    sample = [population[rng.randrange(n)] for _ in range(k)]
    best_fitness = max(ind.fitness for ind in sample)
    tied = [ind for ind in sample if ind.fitness == best_fitness]
    return tied[rng.randrange(len(tied))]


def _evaluate(problem, genomes) -> list:
    many = getattr(problem, "fitness_many", None)
    if many is not None:
        return list(many(genomes))
    return [problem.fitness(g) for g in genomes]


def _best(population: Sequence[EvaluatedIndividual]) -> EvaluatedIndividual:
    best = population[0]
    for ind in population[1:]:
        if ind.fitness > best.fitness:
            best = ind
    return best


def run_ga(problem, config: GAConfig) -> Tuple[EvaluatedIndividual, RunStats]:
    config.validate()
    rng = random.Random(config.seed)
    max_fitness: Optional[int] = getattr(problem, "max_fitness", None)

    genomes = [problem.random_genome(rng) for _ in range(config.population_size)]
    population = [
        EvaluatedIndividual(g, f) for g, f in zip(genomes, _evaluate(problem, genomes))
    ]
    best = _best(population)
    stats = RunStats(best_fitness_per_generation=[best.fitness])

    if max_fitness is not None and best.fitness >= max_fitness:
        stats.terminated_early = True
        return best, stats

    for _ in range(config.max_generations):
        offspring = []
        while len(offspring) < config.population_size:
            if rng.random() < config.crossover_rate:
                p1 = tournament_select(population, config.tournament_size, rng)
                p2 = tournament_select(population, config.tournament_size, rng)
                c1, c2 = problem.crossover(p1.genome, p2.genome, rng)
                offspring.append(c1)
                if len(offspring) < config.population_size:
                    offspring.append(c2)
            else:
                parent = tournament_select(population, config.tournament_size, rng)
                offspring.append(problem.mutate(parent.genome, rng))
        population = [
            EvaluatedIndividual(g, f)
            for g, f in zip(offspring, _evaluate(problem, offspring))
        ]
        generation_best = _best(population)
        if generation_best.fitness > best.fitness:
            best = generation_best
        stats.generations_executed += 1
        stats.best_fitness_per_generation.append(best.fitness)
        if max_fitness is not None and best.fitness >= max_fitness:
            stats.terminated_early = True
            break
    return best, stats


def parse_config_file(source) -> dict:
    """Parse a line-oriented `key=value` GA config file into keyword overrides."""
    overrides = {}
    int_keys = {"population_size", "tournament_size", "max_generations", "seed"}
    float_keys = {"crossover_rate", "mutation_rate"}
    with open(source, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in int_keys:
                overrides[key] = int(value)
            elif key in float_keys:
                overrides[key] = float(value)
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
    return overrides
