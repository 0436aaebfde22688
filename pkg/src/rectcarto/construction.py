"""Cartogram construction: exact-area boxes laid out along a DFS.

Regions keep their input aspect ratio but take the area dictated by
their statistical value; positions come from a depth-first walk of the
adjacency graph that drops each region tangent to an already-placed
anchor, sweeping ring angles outward from the original bearing between
the two regions. The visit order is the main quality lever and is what
the optimizers search over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import engine
from .errors import MapValidationError
from .geometry import Rect
from .metrics import (
    TOPOLOGY_SENTINEL,
    _bearing_matrix,
    _per_region_arrays,
    _wrapped_deviation,
)
from .model import InputMap, InputRegion, Permutation, _closed_adjacency, _require_connected


def scaled_extents(region: InputRegion, desired_area: float) -> tuple[float, float]:
    """Half-extents of a box with the region's aspect ratio and the given area."""
    if desired_area <= 0.0:
        raise MapValidationError(f"desired area must be positive, got {desired_area!r}")
    sdx = math.sqrt(desired_area * region.dx / (4.0 * region.dy))
    return sdx, sdx * (region.dy / region.dx)


@dataclass(frozen=True)
class PlacedRegion:
    """One cartogram region with its per-region diagnostics.

    ``topology_error`` counts the neighbor-set changes against the input
    graph, or holds TOPOLOGY_SENTINEL for a region dropped with overlap.
    """

    rect: Rect
    name: str
    z: float
    dfs_num: int
    topology_error: int
    relpos_error: float
    relposnh_error: float


@dataclass
class Cartogram:
    """Construction output: transformed boxes plus diagnostics.

    Arrays are index-aligned with the input map rows. ``feasible`` means
    every region found a tangent, overlap-free position; construction
    then guarantees pairwise disjoint interiors and a connected union.
    """

    names: tuple[str, ...]
    z: np.ndarray
    x: np.ndarray
    y: np.ndarray
    dx: np.ndarray
    dy: np.ndarray
    dfs_num: np.ndarray
    failed: np.ndarray
    topology_errors: np.ndarray
    relpos_errors: np.ndarray
    relposnh_errors: np.ndarray
    feasible: bool

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def regions(self) -> tuple[PlacedRegion, ...]:
        return tuple(
            PlacedRegion(
                rect=Rect(float(self.x[i]), float(self.y[i]), float(self.dx[i]), float(self.dy[i])),
                name=self.names[i],
                z=float(self.z[i]),
                dfs_num=int(self.dfs_num[i]),
                topology_error=int(self.topology_errors[i]),
                relpos_error=float(self.relpos_errors[i]),
                relposnh_error=float(self.relposnh_errors[i]),
            )
            for i in range(len(self.names))
        )

    def bbox(self) -> tuple[float, float, float, float]:
        """Tight bounding box (xmin, xmax, ymin, ymax) over all boxes."""
        return (
            float((self.x - self.dx).min()),
            float((self.x + self.dx).max()),
            float((self.y - self.dy).min()),
            float((self.y + self.dy).max()),
        )

    @classmethod
    def from_arrays(
        cls,
        names: Sequence[str],
        z: Sequence[float],
        x: Sequence[float],
        y: Sequence[float],
        dx: Sequence[float],
        dy: Sequence[float],
        dfs_num: Sequence[int] | None = None,
        topology_errors: Sequence[int] | None = None,
        relpos_errors: Sequence[float] | None = None,
        relposnh_errors: Sequence[float] | None = None,
        failed: Sequence[bool] | None = None,
        feasible: bool | None = None,
    ) -> "Cartogram":
        """Assemble a cartogram from plain geometry (file loads, tests).

        Diagnostics default to zeros and ``failed`` to all-False; callers
        asserting ``feasible=True`` take responsibility for it.
        """
        n = len(names)
        failed_arr = (
            np.zeros(n, dtype=bool) if failed is None else np.asarray(failed, dtype=bool)
        )
        return cls(
            names=tuple(names),
            z=np.asarray(z, dtype=np.float64),
            x=np.asarray(x, dtype=np.float64),
            y=np.asarray(y, dtype=np.float64),
            dx=np.asarray(dx, dtype=np.float64),
            dy=np.asarray(dy, dtype=np.float64),
            dfs_num=(
                np.arange(1, n + 1, dtype=np.int32)
                if dfs_num is None
                else np.asarray(dfs_num, dtype=np.int32)
            ),
            failed=failed_arr,
            topology_errors=(
                np.zeros(n, dtype=np.int32)
                if topology_errors is None
                else np.asarray(topology_errors, dtype=np.int32)
            ),
            relpos_errors=(
                np.zeros(n) if relpos_errors is None else np.asarray(relpos_errors, dtype=np.float64)
            ),
            relposnh_errors=(
                np.zeros(n)
                if relposnh_errors is None
                else np.asarray(relposnh_errors, dtype=np.float64)
            ),
            feasible=bool(not failed_arr.any()) if feasible is None else feasible,
        )


@dataclass(frozen=True)
class ConstructionStats:
    """Cost counters from one construction run."""

    intersection_tests: int
    kernel: str


def identity_cartogram(m: InputMap) -> Cartogram:
    """The input geometry viewed as a cartogram of itself.

    Useful for summarizing raw maps: area error then measures how far
    the input areas sit from their z-proportional targets. Not marked
    feasible since input boxes normally overlap.
    """
    c = m._compiled
    return Cartogram.from_arrays(
        names=m.names, z=c.z, x=c.x, y=c.y, dx=c.dx, dy=c.dy, feasible=False
    )


def _resolve_order(m: InputMap, order) -> np.ndarray:
    n = len(m)
    if order is None:
        return np.arange(n, dtype=np.int32)
    if not isinstance(order, Permutation):
        order = Permutation(tuple(order))
    if len(order) != n:
        raise MapValidationError(
            f"ordering has {len(order)} entries for a map of {n} regions"
        )
    return np.asarray(order.order, dtype=np.int32)


def construct_with_stats(
    m: InputMap,
    order: Permutation | Sequence[int] | None = None,
    *,
    use_index: bool = True,
    kernel: str | None = None,
) -> tuple[Cartogram, ConstructionStats]:
    """Construct a cartogram and report the kernel's cost counters.

    ``use_index=False`` switches overlap checking to the naive linear
    scan (same results, more rectangle-pair tests); ``kernel`` pins the
    compiled or pure-Python implementation instead of the default.
    """
    compiled = m._compiled
    _require_connected(m, compiled)
    seq = _resolve_order(m, order)
    if compiled.scaled_dx is None:
        compiled.scaled_dx = np.sqrt(compiled.desired * compiled.dx / (4.0 * compiled.dy))
        compiled.scaled_dy = compiled.scaled_dx * (compiled.dy / compiled.dx)
    out_x, out_y, dfs_num, failed, tests = engine.run_construction(
        compiled, seq, use_index, kernel
    )
    if compiled.bearings is None:
        compiled.bearings = _bearing_matrix(compiled.x, compiled.y)
    delta = _wrapped_deviation(compiled.bearings, _bearing_matrix(out_x, out_y))
    adj_out = _closed_adjacency(out_x, out_y, compiled.scaled_dx, compiled.scaled_dy)
    topology, relpos, relposnh = _per_region_arrays(compiled.adjacency, adj_out, delta)
    topology = np.where(failed, TOPOLOGY_SENTINEL, topology).astype(np.int32)
    cart = Cartogram(
        names=m.names,
        z=compiled.z.copy(),
        x=out_x,
        y=out_y,
        dx=compiled.scaled_dx.copy(),
        dy=compiled.scaled_dy.copy(),
        dfs_num=dfs_num,
        failed=failed,
        topology_errors=topology,
        relpos_errors=relpos,
        relposnh_errors=relposnh,
        feasible=bool(not failed.any()),
    )
    name = engine.kernel_name() if kernel is None else kernel
    return cart, ConstructionStats(intersection_tests=tests, kernel=name)


def construct(
    m: InputMap, order: Permutation | Sequence[int] | None = None
) -> Cartogram:
    """Construct a cartogram of ``m`` visiting regions in ``order``.

    ``order`` defaults to the identity (input row order). Box areas
    match their z-proportional targets and aspect ratios match the input
    exactly, for any order and even for infeasible outcomes; the order
    decides topology and relative-position quality.
    """
    cart, _ = construct_with_stats(m, order)
    return cart
