"""Command line interface.

Subcommands: construct, optimize, checkerboard, summary, bench. Exit
code 0 on success, 1 on validation or usage errors, 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import NoReturn, Sequence

from . import bench as bench_mod
from . import io as io_mod
from .construction import Cartogram, construct, identity_cartogram
from .errors import MapValidationError
from .metaheuristics import (
    FitnessSpec,
    GAConfig,
    GRASPConfig,
    OptimizationResult,
    run_ga,
    run_grasp,
)
from .metrics import SummaryStats, summarize
from .model import InputMap, Permutation, checkerboard
from .rng import Xoshiro256
from .svg import render_svg


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 on usage errors instead of 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rectcarto", description="Rectangular statistical cartograms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a cartogram from a map CSV")
    p.add_argument("--map", required=True, help="input map CSV (x,y,dx,dy,z,name)")
    p.add_argument(
        "--order",
        default="identity",
        help="visit order: identity, reverse, seed:<int>, or file:<path>",
    )
    p.add_argument("--out", help="write the cartogram table here")
    p.add_argument("--format", choices=("csv", "geojson"), default="csv")
    p.add_argument("--svg", help="also render the cartogram to this SVG file")

    p = sub.add_parser("optimize", help="search visit orders with GA or GRASP")
    p.add_argument("--map", required=True)
    p.add_argument("--metaheuristic", choices=("ga", "grasp"), default="ga")
    p.add_argument("--fitness", choices=("default", "weighted"), default="default")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the best cartogram here")
    p.add_argument("--format", choices=("csv", "geojson"), default="csv")
    p.add_argument("--svg")
    p.add_argument("--history-out", help="write (iteration,best_fitness,elapsed_seconds) CSV")
    p.add_argument("--order-out", help="write the best visit order (1-based, one per line)")
    p.add_argument("--pop-size", type=int, default=64)
    p.add_argument("--max-iter", type=int, default=300, help="GA generations")
    p.add_argument("--max-fitness", type=float, default=math.inf)
    p.add_argument("--p-mutation", type=float, default=0.25)
    p.add_argument("--p-crossover", type=float, default=0.8)
    p.add_argument("--elitism", type=int, default=1)
    p.add_argument("--parallel", action="store_true", help="evaluate fitness on threads")
    p.add_argument("--iterations", type=int, default=50, help="GRASP restarts")
    p.add_argument("--local-search-budget", type=int, default=30)

    p = sub.add_parser("checkerboard", help="write an n-by-n checkerboard map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("summary", help="print summary statistics")
    p.add_argument("--map", required=True)
    p.add_argument("--cartogram", help="cartogram CSV to evaluate against the map")

    p = sub.add_parser("bench", help="count intersection tests across board sizes")
    p.add_argument("--sizes", default="4,8,12,16,20", help="comma-separated board sizes")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--strategies", default="naive,indexed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kernel", choices=("compiled", "python"))
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", help="CSV destination, stdout when omitted")

    return parser


def _resolve_order(spec: str, n: int) -> Permutation:
    if spec == "identity":
        return Permutation.identity(n)
    if spec == "reverse":
        return Permutation.reverse(n)
    if spec.startswith("seed:"):
        try:
            seed = int(spec[5:])
        except ValueError:
            raise MapValidationError(f"--order seed wants an integer, got {spec!r}") from None
        return Permutation.random(n, Xoshiro256(seed))
    if spec.startswith("file:"):
        return io_mod.read_permutation(spec[5:], n)
    raise MapValidationError(
        f"unknown --order {spec!r}, expected identity, reverse, seed:<int>, or file:<path>"
    )


def _fmt_cell(value: float | None) -> str:
    return "NA" if value is None else f"{value:.6f}"


def _print_summary(stats: SummaryStats, *, map_only: bool) -> None:
    rows: list[tuple[str, float | None]] = [
        ("number of map regions", float(stats.n_regions)),
        ("area error", stats.area_error),
        ("topology error", None if map_only else float(stats.topology_error)),
        ("relative position error", None if map_only else stats.relative_position_error),
        ("screen filling [in %]", stats.screen_filling_pct),
        ("xmin", stats.bbox[0]),
        ("xmax", stats.bbox[1]),
        ("ymin", stats.bbox[2]),
        ("ymax", stats.bbox[3]),
    ]
    cells = [_fmt_cell(v) for _, v in rows]
    label_w = max(len(label) for label, _ in rows)
    value_w = max(len("values"), max(len(c) for c in cells))
    print(f"{'':<{label_w}} {'values':>{value_w}}")
    for (label, _), cell in zip(rows, cells):
        print(f"{label:<{label_w}} {cell:>{value_w}}")


def _write_outputs(cart: Cartogram, m: InputMap, args: argparse.Namespace) -> None:
    if args.out:
        io_mod.write_cartogram(cart, m, args.out, format=args.format)
    if args.svg:
        render_svg(cart, args.svg)


def _cmd_construct(args: argparse.Namespace) -> int:
    m = io_mod.read_map(args.map)
    order = _resolve_order(args.order, len(m))
    cart = construct(m, order)
    if not cart.feasible:
        print(
            f"warning: {int(cart.failed.sum())} region(s) could not be placed",
            file=sys.stderr,
        )
    _write_outputs(cart, m, args)
    _print_summary(summarize(m, cart), map_only=False)
    return 0


def _run_optimizer(m: InputMap, args: argparse.Namespace) -> OptimizationResult:
    fitness = FitnessSpec(args.fitness)
    if args.metaheuristic == "ga":
        config = GAConfig(
            pop_size=args.pop_size,
            max_iter=args.max_iter,
            max_fitness=args.max_fitness,
            p_mutation=args.p_mutation,
            p_crossover=args.p_crossover,
            elitism=args.elitism,
            seed=args.seed,
            parallel_eval=args.parallel,
        )
        return run_ga(m, fitness, config)
    config = GRASPConfig(
        iterations=args.iterations,
        local_search_budget=args.local_search_budget,
        seed=args.seed,
    )
    return run_grasp(m, fitness, config)


def _cmd_optimize(args: argparse.Namespace) -> int:
    m = io_mod.read_map(args.map)
    result = _run_optimizer(m, args)
    _write_outputs(result.cartogram, m, args)
    if args.history_out:
        with open(args.history_out, "w", encoding="utf-8") as fh:
            fh.write("iteration,best_fitness,elapsed_seconds\n")
            for iteration, best, elapsed in result.history:
                fh.write(f"{iteration},{best!r},{elapsed!r}\n")
    if args.order_out:
        io_mod.write_permutation(result.best_perm, args.order_out)
    print(f"best fitness {result.best_fitness!r} after {result.n_evaluations} evaluations")
    _print_summary(summarize(m, result.cartogram), map_only=False)
    return 0


def _cmd_checkerboard(args: argparse.Namespace) -> int:
    io_mod.write_map(checkerboard(args.n), args.out)
    return 0


def _cmd_summary(args: argparse.Namespace) -> int:
    m = io_mod.read_map(args.map)
    if args.cartogram:
        cart = io_mod.read_cartogram(args.cartogram)
        _print_summary(summarize(m, cart), map_only=False)
    else:
        _print_summary(summarize(m, identity_cartogram(m)), map_only=True)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise MapValidationError(f"--sizes wants comma-separated integers, got {args.sizes!r}") from None
    strategies = tuple(s.strip() for s in args.strategies.split(",") if s.strip())
    records = bench_mod.run_bench(
        sizes,
        runs_per_size=args.runs,
        strategies=strategies,
        seed=args.seed,
        kernel=args.kernel,
        parallel=args.parallel,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            bench_mod.write_bench_csv(records, fh)
    else:
        bench_mod.write_bench_csv(records, sys.stdout)
    return 0


_COMMANDS = {
    "construct": _cmd_construct,
    "optimize": _cmd_optimize,
    "checkerboard": _cmd_checkerboard,
    "summary": _cmd_summary,
    "bench": _cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except MapValidationError as exc:
        print(f"rectcarto: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"rectcarto: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"rectcarto: error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


__all__ = ["main", "run"]
