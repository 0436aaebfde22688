"""Intersection-test benchmark over checkerboards.

Runs the construction on checkerboard maps of several sizes with random
orderings, once per candidate-probing strategy, and records how many
rectangle intersection tests and how much wall time each construction
took. The same ordering is reused across strategies within a run so the
counts are directly comparable.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Sequence

from .construction import construct_with_stats
from .errors import MapValidationError
from .metaheuristics import _worker_count
from .model import checkerboard
from .rng import Xoshiro256

BENCH_CSV_HEADER = "board_n,n_regions,strategy,run_index,intersection_calls,elapsed_seconds,feasible"

STRATEGIES = ("naive", "indexed")


@dataclass(frozen=True)
class BenchRecord:
    """One construction: board size, probing strategy, and its cost."""

    board_n: int
    n_regions: int
    strategy: str
    run_index: int
    intersection_calls: int
    elapsed_seconds: float
    feasible: bool


def run_bench(
    sizes: Sequence[int],
    runs_per_size: int = 10,
    strategies: Sequence[str] = STRATEGIES,
    seed: int = 0,
    kernel: str | None = None,
    parallel: bool = False,
) -> list[BenchRecord]:
    """Benchmark checkerboard constructions.

    One random ordering is drawn per (size, run) and shared by every
    strategy; only construction itself is timed. Records arrive grouped
    by size, then run, then strategy order as given.
    """
    for s in strategies:
        if s not in STRATEGIES:
            raise MapValidationError(
                f"unknown strategy {s!r}, expected one of {', '.join(STRATEGIES)}"
            )
    if runs_per_size < 1:
        raise MapValidationError("runs_per_size must be >= 1")
    rng = Xoshiro256(seed)

    jobs: list[tuple[int, int, str, list[int]]] = []
    maps = {}
    for n in sizes:
        maps[n] = checkerboard(n)
        for run in range(1, runs_per_size + 1):
            order = rng.permutation(n * n)
            for strategy in strategies:
                jobs.append((n, run, strategy, order))

    def run_one(job: tuple[int, int, str, list[int]]) -> BenchRecord:
        n, run, strategy, order = job
        t0 = time.perf_counter()
        cart, stats = construct_with_stats(
            maps[n], order, use_index=(strategy == "indexed"), kernel=kernel
        )
        elapsed = time.perf_counter() - t0
        return BenchRecord(
            board_n=n,
            n_regions=n * n,
            strategy=strategy,
            run_index=run,
            intersection_calls=stats.intersection_tests,
            elapsed_seconds=elapsed,
            feasible=cart.feasible,
        )

    if parallel and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=_worker_count(len(jobs))) as pool:
            return list(pool.map(run_one, jobs))
    return [run_one(job) for job in jobs]


def write_bench_csv(records: Sequence[BenchRecord], stream: IO[str]) -> None:
    """Write records in the fixed benchmark CSV schema."""
    stream.write(BENCH_CSV_HEADER + "\n")
    for r in records:
        stream.write(
            f"{r.board_n},{r.n_regions},{r.strategy},{r.run_index},"
            f"{r.intersection_calls},{r.elapsed_seconds!r},"
            f"{'true' if r.feasible else 'false'}\n"
        )
