"""Rectangular statistical cartograms.

Transforms a map of geolocated rectangles so every rectangle's area
matches its statistical value while aspect ratios stay put, then scores
and optimizes the construction order with a GA or GRASP.
"""

from .construction import (
    Cartogram,
    ConstructionStats,
    PlacedRegion,
    construct,
    construct_with_stats,
    identity_cartogram,
    scaled_extents,
)
from .bench import BenchRecord, run_bench, write_bench_csv
from .datasets import us_states
from .engine import kernel_name
from .errors import DisconnectedMapError, MapValidationError
from .io import (
    read_cartogram,
    read_map,
    read_permutation,
    write_cartogram,
    write_map,
    write_permutation,
)
from .metaheuristics import (
    FITNESS_CAP,
    FitnessSpec,
    GAConfig,
    GRASPConfig,
    OptimizationResult,
    fitness_default,
    fitness_weighted,
    run_ga,
    run_grasp,
    score_cartogram,
)
from .geometry import EPS, Rect, SpatialIndex, angle_diff, area, bearing, intersects, placement_ring, wrap_angle
from .metrics import (
    SummaryStats,
    TOPOLOGY_SENTINEL,
    d_A,
    d_R,
    d_S,
    d_T,
    output_dual_graph,
    per_region_errors,
    summarize,
)
from .model import (
    InputMap,
    InputRegion,
    Permutation,
    PseudoDualGraph,
    build_dual_graph,
    checkerboard,
    desired_areas,
)
from .rng import Xoshiro256
from .svg import COLORMAPS, render_svg

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "COLORMAPS",
    "Cartogram",
    "ConstructionStats",
    "DisconnectedMapError",
    "EPS",
    "FITNESS_CAP",
    "FitnessSpec",
    "GAConfig",
    "GRASPConfig",
    "InputMap",
    "InputRegion",
    "MapValidationError",
    "OptimizationResult",
    "Permutation",
    "PlacedRegion",
    "PseudoDualGraph",
    "Rect",
    "SpatialIndex",
    "SummaryStats",
    "TOPOLOGY_SENTINEL",
    "Xoshiro256",
    "angle_diff",
    "area",
    "bearing",
    "build_dual_graph",
    "checkerboard",
    "construct",
    "construct_with_stats",
    "d_A",
    "d_R",
    "d_S",
    "d_T",
    "desired_areas",
    "fitness_default",
    "fitness_weighted",
    "identity_cartogram",
    "intersects",
    "kernel_name",
    "output_dual_graph",
    "per_region_errors",
    "placement_ring",
    "read_cartogram",
    "read_map",
    "read_permutation",
    "render_svg",
    "run_bench",
    "run_ga",
    "run_grasp",
    "scaled_extents",
    "score_cartogram",
    "summarize",
    "us_states",
    "write_bench_csv",
    "write_cartogram",
    "write_map",
    "write_permutation",
    "__version__",
]
