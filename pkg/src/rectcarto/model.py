"""Input maps, validation, orderings, and the rectangle adjacency graph."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import DisconnectedMapError, MapValidationError
from .geometry import EPS, Rect
from .rng import Xoshiro256


@dataclass(frozen=True)
class InputRegion:
    """One map region: a centered bounding box plus its statistical value."""

    x: float
    y: float
    dx: float
    dy: float
    z: float
    name: str

    def __post_init__(self) -> None:
        for attr in ("x", "y", "dx", "dy", "z"):
            v = getattr(self, attr)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise MapValidationError(f"{attr} must be a finite number, got {v!r}")
        if self.dx <= 0.0 or self.dy <= 0.0:
            raise MapValidationError(
                f"half-extents must be positive, got dx={self.dx!r} dy={self.dy!r}"
            )
        if self.z <= 0.0:
            raise MapValidationError(f"statistical value must be positive, got z={self.z!r}")
        if not self.name:
            raise MapValidationError("region name must be non-empty")

    @property
    def rect(self) -> Rect:
        return Rect(self.x, self.y, self.dx, self.dy)


@dataclass(frozen=True)
class InputMap:
    """Ordered region collection; the row order defines the identity ordering."""

    regions: tuple[InputRegion, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "regions", tuple(self.regions))
        if len(self.regions) < 2:
            raise MapValidationError("a map needs at least 2 regions")
        seen: dict[str, int] = {}
        for i, r in enumerate(self.regions):
            if r.name in seen:
                raise MapValidationError(
                    f"duplicate region name {r.name!r} (rows {seen[r.name] + 1} and {i + 1})"
                )
            seen[r.name] = i

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self) -> Iterator[InputRegion]:
        return iter(self.regions)

    def __getitem__(self, i: int) -> InputRegion:
        return self.regions[i]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.regions)

    @cached_property
    def _compiled(self) -> "_CompiledMap":
        return _CompiledMap(self)


class _CompiledMap:
    """Array form of a map, shared by the placement kernels and metrics.

    Everything permutation-independent lives here and is computed once
    per map; optimizers construct thousands of cartograms from the same
    input. ``scaled_dx``/``scaled_dy``/``bearings`` start as None and are
    filled lazily by the construction module.
    """

    __slots__ = (
        "n", "x", "y", "dx", "dy", "z", "names", "desired",
        "adjacency", "indptr", "indices", "components",
        "scaled_dx", "scaled_dy", "bearings",
    )

    def __init__(self, m: InputMap) -> None:
        self.n = len(m.regions)
        self.x = np.array([r.x for r in m.regions], dtype=np.float64)
        self.y = np.array([r.y for r in m.regions], dtype=np.float64)
        self.dx = np.array([r.dx for r in m.regions], dtype=np.float64)
        self.dy = np.array([r.dy for r in m.regions], dtype=np.float64)
        self.z = np.array([r.z for r in m.regions], dtype=np.float64)
        self.names = m.names
        areas = 4.0 * self.dx * self.dy
        self.desired = self.z * (float(areas.sum()) / float(self.z.sum()))
        self.adjacency = _closed_adjacency(self.x, self.y, self.dx, self.dy)
        counts = self.adjacency.sum(axis=1, dtype=np.int64)
        self.indptr = np.zeros(self.n + 1, dtype=np.int32)
        np.cumsum(counts, out=self.indptr[1:])
        # np.nonzero walks rows in order, so neighbor lists come out
        # sorted by region index
        self.indices = np.nonzero(self.adjacency)[1].astype(np.int32)
        self.components = _components(self.n, self.indptr, self.indices)
        self.scaled_dx = None
        self.scaled_dy = None
        self.bearings = None


def _closed_adjacency(
    x: np.ndarray, y: np.ndarray, dx: np.ndarray, dy: np.ndarray
) -> np.ndarray:
    """Boolean matrix of pairwise closed-mode box intersection (diagonal False)."""
    adj = (np.abs(x[:, None] - x[None, :]) <= dx[:, None] + dx[None, :] + EPS) & (
        np.abs(y[:, None] - y[None, :]) <= dy[:, None] + dy[None, :] + EPS
    )
    np.fill_diagonal(adj, False)
    return adj


def _components(n: int, indptr: np.ndarray, indices: np.ndarray) -> list[list[int]]:
    """Connected components over a CSR adjacency, in first-seen order."""
    seen = [False] * n
    out: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in indices[indptr[u] : indptr[u + 1]]:
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    frontier.append(v)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class PseudoDualGraph:
    """Region adjacency induced by touching or overlapping boxes.

    Edges are 0-based ``(i, j)`` pairs with ``i < j``; corner contact
    counts like edge contact (closed-mode intersection).
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def neighbors(self, i: int) -> set[int]:
        return {b if a == i else a for a, b in self.edges if i in (a, b)}

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))


def build_dual_graph(m: InputMap) -> PseudoDualGraph:
    """Adjacency graph of the input boxes.

    Raises DisconnectedMapError when the boxes split into several
    components, since construction needs every region reachable from the
    starting one.
    """
    compiled = m._compiled
    _require_connected(m, compiled)
    iu, ju = np.nonzero(np.triu(compiled.adjacency, 1))
    edges = frozenset((int(a), int(b)) for a, b in zip(iu, ju))
    return PseudoDualGraph(n=compiled.n, edges=edges)


def _require_connected(m: InputMap, compiled: _CompiledMap) -> None:
    if len(compiled.components) > 1:
        names = [[m.regions[i].name for i in comp] for comp in compiled.components]
        raise DisconnectedMapError(names)


def desired_areas(m: InputMap | Sequence[InputRegion]) -> np.ndarray:
    """Target box areas: the total input area split proportionally to z."""
    if isinstance(m, InputMap):
        return m._compiled.desired.copy()
    regions = list(m)
    if not regions:
        raise MapValidationError("desired_areas needs at least one region")
    areas = np.array([4.0 * r.dx * r.dy for r in regions])
    z = np.array([r.z for r in regions])
    return z * (float(areas.sum()) / float(z.sum()))


def checkerboard(n: int) -> InputMap:
    """n x n board of unit cells with z = 4 on black and z = 1 on white.

    Cell (i, j), 1-based, is centered at (i, j) with half-extents 0.5;
    (i + j) even is black. A cartogram of the board must grow the black
    cells to 4x the white area.
    """
    if n < 2:
        raise MapValidationError(f"checkerboard size must be at least 2, got {n}")
    regions = []
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            z = 4.0 if (i + j) % 2 == 0 else 1.0
            regions.append(
                InputRegion(float(i), float(j), 0.5, 0.5, z, f"cell_{i}_{j}")
            )
    return InputMap(tuple(regions))


@dataclass(frozen=True)
class Permutation:
    """Visit-priority ordering of region indices: a 0-based bijection.

    ``order[0]`` is the region construction starts from; earlier entries
    win whenever the traversal chooses among neighbors.
    """

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(int(i) for i in self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise MapValidationError(
                "ordering must be a permutation of 0..n-1 without repeats"
            )

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __getitem__(self, i: int) -> int:
        return self.order[i]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def reverse(cls, n: int) -> "Permutation":
        return cls(tuple(range(n - 1, -1, -1)))

    @classmethod
    def random(cls, n: int, rng: Xoshiro256) -> "Permutation":
        return cls(tuple(rng.permutation(n)))
