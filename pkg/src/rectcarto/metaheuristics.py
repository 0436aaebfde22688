"""Ordering search: fitness functions, a permutation GA, and GRASP.

Construction quality hinges on the region visit order, so both
optimizers search permutation space. All randomness flows from one
seeded xoshiro256** stream and fitness evaluation draws none, which
makes runs reproducible and lets parallel evaluation return exactly the
serial results. The ``RECTCARTO_THREADS`` environment variable caps the
evaluation worker count.
"""

from __future__ import annotations

import math
import os
import time
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .construction import Cartogram, construct
from .errors import MapValidationError
from .metrics import summarize
from .model import InputMap, Permutation
from .rng import Xoshiro256

#: Ceiling applied when a fitness denominator reaches zero (a layout the
#: objective considers perfect).
FITNESS_CAP = 1e12

_WEIGHTED_DEFAULT = (0.2, 0.6, 0.2)


@dataclass(frozen=True)
class FitnessSpec:
    """Which objective an optimizer maximizes.

    ``default`` rewards small summed per-region relative-position error;
    ``weighted`` combines the worst per-region topology error, the mean
    bearing deviation, and unused canvas, mixed by ``weights``.
    """

    kind: str = "default"
    weights: tuple[float, float, float] = _WEIGHTED_DEFAULT

    def __post_init__(self) -> None:
        if self.kind not in ("default", "weighted"):
            raise MapValidationError(
                f"unknown fitness {self.kind!r}, expected 'default' or 'weighted'"
            )


def _capped_inverse(denominator: float) -> float:
    if denominator <= 1.0 / FITNESS_CAP:
        return FITNESS_CAP
    return 1.0 / denominator


def _combine_weighted(
    dt_max: float, d_r: float, d_e: float, weights: tuple[float, float, float]
) -> float:
    return _capped_inverse(weights[0] * dt_max + weights[1] * d_r + weights[2] * d_e)


def score_cartogram(
    m: InputMap, cart: Cartogram, spec: FitnessSpec = FitnessSpec()
) -> float:
    """Fitness of an already-constructed cartogram.

    Any region that failed placement zeroes the score; both objectives
    only rank fully feasible layouts.
    """
    if cart.failed.any():
        return 0.0
    if spec.kind == "default":
        return _capped_inverse(float(cart.relpos_errors.sum()))
    stats = summarize(m, cart)
    dt_max = float(cart.topology_errors.max())
    d_e = (100.0 - stats.screen_filling_pct) / 100.0
    return _combine_weighted(dt_max, stats.relative_position_error, d_e, spec.weights)


def fitness_default(order, m: InputMap) -> float:
    """Construct with ``order`` and score with the default objective."""
    return score_cartogram(m, construct(m, order), FitnessSpec("default"))


def fitness_weighted(order, m: InputMap) -> float:
    """Construct with ``order`` and score with the weighted objective."""
    return score_cartogram(m, construct(m, order), FitnessSpec("weighted"))


@dataclass(frozen=True)
class GAConfig:
    """Permutation GA settings (linear-rank selection, ordered crossover,
    swap mutation, elitist carryover)."""

    pop_size: int = 64
    max_iter: int = 300
    max_fitness: float = math.inf
    p_mutation: float = 0.25
    p_crossover: float = 0.8
    elitism: int = 1
    seed: int = 0
    parallel_eval: bool = False

    def __post_init__(self) -> None:
        if self.pop_size < 2:
            raise MapValidationError("population needs at least 2 individuals")
        if self.max_iter < 0:
            raise MapValidationError("max_iter must be >= 0")
        if not 0.0 <= self.p_mutation <= 1.0 or not 0.0 <= self.p_crossover <= 1.0:
            raise MapValidationError("probabilities must lie in [0, 1]")
        if not 0 <= self.elitism < self.pop_size:
            raise MapValidationError("elitism must lie in [0, pop_size)")


@dataclass(frozen=True)
class GRASPConfig:
    """GRASP settings: random restarts plus an adjacent-swap hill climb."""

    iterations: int = 50
    local_search_budget: int = 30
    seed: int = 0

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise MapValidationError("iterations must be >= 1")
        if self.local_search_budget < 0:
            raise MapValidationError("local_search_budget must be >= 0")


@dataclass
class OptimizationResult:
    """Best ordering found, its cartogram, and the improvement trace.

    ``history`` rows are ``(iteration, best_fitness, elapsed_seconds)``;
    best_fitness never decreases. ``elapsed_seconds`` is wall time, the
    one field that varies between identical seeded runs.
    """

    best_perm: Permutation
    best_fitness: float
    cartogram: Cartogram
    history: list[tuple[int, float, float]]
    n_evaluations: int


def _worker_count(n_tasks: int) -> int:
    workers = os.cpu_count() or 1
    cap = os.environ.get("RECTCARTO_THREADS")
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            raise MapValidationError(
                f"RECTCARTO_THREADS must be an integer, got {cap!r}"
            ) from None
    return max(1, min(workers, n_tasks))


def _evaluate_batch(
    evaluate: Callable[[list[int]], float],
    batch: list[list[int]],
    parallel: bool,
) -> list[float]:
    # evaluation is pure and draws no randomness, so mapping in order
    # keeps parallel results identical to serial ones
    if not parallel or len(batch) < 2:
        return [evaluate(p) for p in batch]
    with ThreadPoolExecutor(max_workers=_worker_count(len(batch))) as pool:
        return list(pool.map(evaluate, batch))


def _ordered_crossover(p1: list[int], p2: list[int], rng: Xoshiro256) -> list[int]:
    """Classic OX: keep a slice of p1, fill the rest in p2's cyclic order."""
    n = len(p1)
    i = rng.randrange(n)
    j = rng.randrange(n)
    if i > j:
        i, j = j, i
    child = [-1] * n
    child[i : j + 1] = p1[i : j + 1]
    used = [False] * n
    for g in child[i : j + 1]:
        used[g] = True
    pos = (j + 1) % n
    for k in range(n):
        g = p2[(j + 1 + k) % n]
        if not used[g]:
            child[pos] = g
            pos = (pos + 1) % n
    return child


def _swap_mutation(perm: list[int], rng: Xoshiro256) -> None:
    n = len(perm)
    i = rng.randrange(n)
    j = rng.randrange(n - 1)
    if j >= i:
        j += 1
    perm[i], perm[j] = perm[j], perm[i]


def _rank_pick(
    sorted_idx: list[int], cumulative: list[float], total: float, rng: Xoshiro256
) -> int:
    u = rng.random() * total
    return sorted_idx[min(bisect_right(cumulative, u), len(sorted_idx) - 1)]


def run_ga(
    m: InputMap,
    fitness: FitnessSpec = FitnessSpec(),
    config: GAConfig = GAConfig(),
) -> OptimizationResult:
    """Search orderings with a permutation GA.

    The initial population is the identity, its reverse, and uniform
    random permutations. Each generation keeps the ``elitism`` best
    unchanged and refills the rest from linear-rank-selected parents via
    ordered crossover (probability ``p_crossover``) and a single swap
    mutation (probability ``p_mutation``). Stops after ``max_iter``
    generations or once the best fitness reaches ``max_fitness``.
    """
    rng = Xoshiro256(config.seed)
    n = len(m)
    spec = fitness

    def evaluate(perm: list[int]) -> float:
        return score_cartogram(m, construct(m, perm), spec)

    population: list[list[int]] = [list(range(n)), list(range(n - 1, -1, -1))]
    while len(population) < config.pop_size:
        population.append(rng.permutation(n))
    population = population[: config.pop_size]

    t0 = time.perf_counter()
    fitnesses = _evaluate_batch(evaluate, population, config.parallel_eval)
    n_evaluations = len(population)

    best_i = max(range(len(population)), key=lambda i: (fitnesses[i], -i))
    best_perm = list(population[best_i])
    best_fitness = fitnesses[best_i]
    history = [(0, best_fitness, time.perf_counter() - t0)]

    for generation in range(1, config.max_iter + 1):
        if best_fitness >= config.max_fitness:
            break
        # linear-rank weights: worst gets 1, best gets pop_size
        order = sorted(range(len(population)), key=lambda i: (fitnesses[i], -i))
        cumulative: list[float] = []
        acc = 0.0
        for r in range(len(order)):
            acc += r + 1.0
            cumulative.append(acc)
        elites_idx = order[len(order) - config.elitism :][::-1]
        elites = [list(population[i]) for i in elites_idx]
        elite_fits = [fitnesses[i] for i in elites_idx]

        offspring: list[list[int]] = []
        while len(offspring) < config.pop_size - config.elitism:
            pa = population[_rank_pick(order, cumulative, acc, rng)]
            pb = population[_rank_pick(order, cumulative, acc, rng)]
            child = (
                _ordered_crossover(pa, pb, rng)
                if rng.random() < config.p_crossover
                else list(pa)
            )
            if rng.random() < config.p_mutation:
                _swap_mutation(child, rng)
            offspring.append(child)

        child_fits = _evaluate_batch(evaluate, offspring, config.parallel_eval)
        n_evaluations += len(offspring)
        population = elites + offspring
        fitnesses = elite_fits + child_fits

        gen_best = max(range(len(population)), key=lambda i: (fitnesses[i], -i))
        if fitnesses[gen_best] > best_fitness:
            best_fitness = fitnesses[gen_best]
            best_perm = list(population[gen_best])
        history.append((generation, best_fitness, time.perf_counter() - t0))

    return OptimizationResult(
        best_perm=Permutation(tuple(best_perm)),
        best_fitness=best_fitness,
        cartogram=construct(m, best_perm),
        history=history,
        n_evaluations=n_evaluations,
    )


def run_grasp(
    m: InputMap,
    fitness: FitnessSpec = FitnessSpec(),
    config: GRASPConfig = GRASPConfig(),
) -> OptimizationResult:
    """Search orderings with GRASP.

    Each iteration samples a uniform random permutation, then hill
    climbs: a random adjacent pair is swapped and the swap is kept only
    when fitness strictly improves, until ``local_search_budget`` trials
    are spent. The best ordering across all iterations wins.
    """
    rng = Xoshiro256(config.seed)
    n = len(m)
    spec = fitness

    def evaluate(perm: list[int]) -> float:
        return score_cartogram(m, construct(m, perm), spec)

    best_perm: list[int] | None = None
    best_fitness = -math.inf
    history: list[tuple[int, float, float]] = []
    n_evaluations = 0
    t0 = time.perf_counter()

    for iteration in range(1, config.iterations + 1):
        current = rng.permutation(n)
        current_fit = evaluate(current)
        n_evaluations += 1
        if current_fit > best_fitness:
            best_fitness = current_fit
            best_perm = list(current)
        for _ in range(config.local_search_budget):
            k = rng.randrange(n - 1)
            current[k], current[k + 1] = current[k + 1], current[k]
            candidate_fit = evaluate(current)
            n_evaluations += 1
            if candidate_fit > current_fit:
                current_fit = candidate_fit
                if candidate_fit > best_fitness:
                    best_fitness = candidate_fit
                    best_perm = list(current)
            else:
                current[k], current[k + 1] = current[k + 1], current[k]
        history.append((iteration, best_fitness, time.perf_counter() - t0))

    assert best_perm is not None
    return OptimizationResult(
        best_perm=Permutation(tuple(best_perm)),
        best_fitness=best_fitness,
        cartogram=construct(m, best_perm),
        history=history,
        n_evaluations=n_evaluations,
    )
