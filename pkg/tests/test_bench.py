"""Benchmark harness: record schema, pairing, strategy comparison."""

from __future__ import annotations

import io
import statistics

import pytest

from rectcarto.bench import BENCH_CSV_HEADER, BenchRecord, run_bench, write_bench_csv
from rectcarto.errors import MapValidationError


def test_header_schema():
    assert (
        BENCH_CSV_HEADER
        == "board_n,n_regions,strategy,run_index,intersection_calls,elapsed_seconds,feasible"
    )


def test_records_cover_grid():
    records = run_bench([3, 4], runs_per_size=3, seed=1)
    assert len(records) == 2 * 3 * 2
    assert {r.board_n for r in records} == {3, 4}
    assert all(r.n_regions == r.board_n**2 for r in records)
    assert {r.run_index for r in records} == {1, 2, 3}
    assert all(r.intersection_calls > 0 for r in records)
    assert all(r.elapsed_seconds >= 0.0 for r in records)


def test_strategies_share_the_ordering_per_run():
    records = run_bench([4], runs_per_size=5, seed=3)
    by_run = {}
    for r in records:
        by_run.setdefault(r.run_index, {})[r.strategy] = r
    for pair in by_run.values():
        # same ordering, same layout: feasibility must agree
        assert pair["naive"].feasible == pair["indexed"].feasible
        assert pair["indexed"].intersection_calls <= pair["naive"].intersection_calls


def test_indexed_beats_naive_on_median():
    records = run_bench([6], runs_per_size=15, seed=0)
    naive = [r.intersection_calls for r in records if r.strategy == "naive"]
    indexed = [r.intersection_calls for r in records if r.strategy == "indexed"]
    assert statistics.median(indexed) < statistics.median(naive)


def test_deterministic_for_fixed_seed():
    a = run_bench([4], runs_per_size=4, seed=9)
    b = run_bench([4], runs_per_size=4, seed=9)
    assert [r.intersection_calls for r in a] == [r.intersection_calls for r in b]
    assert [r.feasible for r in a] == [r.feasible for r in b]


def test_csv_format():
    records = [
        BenchRecord(
            board_n=4,
            n_regions=16,
            strategy="indexed",
            run_index=1,
            intersection_calls=123,
            elapsed_seconds=0.25,
            feasible=True,
        ),
        BenchRecord(
            board_n=4,
            n_regions=16,
            strategy="naive",
            run_index=2,
            intersection_calls=456,
            elapsed_seconds=0.5,
            feasible=False,
        ),
    ]
    out = io.StringIO()
    write_bench_csv(records, out)
    lines = out.getvalue().splitlines()
    assert lines[0] == BENCH_CSV_HEADER
    assert lines[1] == "4,16,indexed,1,123,0.25,true"
    assert lines[2] == "4,16,naive,2,456,0.5,false"


def test_unknown_strategy_rejected():
    with pytest.raises(MapValidationError):
        run_bench([4], strategies=("quantum",))


def test_parallel_matches_serial_counts():
    serial = run_bench([4], runs_per_size=3, seed=2, parallel=False)
    parallel = run_bench([4], runs_per_size=3, seed=2, parallel=True)
    assert [r.intersection_calls for r in serial] == [
        r.intersection_calls for r in parallel
    ]
