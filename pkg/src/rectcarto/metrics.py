"""Objective functions and summary statistics for (map, cartogram) pairs.

All metrics recompute from geometry rather than trusting diagnostics
stored on the cartogram, so they apply equally to constructed and
hand-built layouts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .geometry import EPS
from .model import InputMap, PseudoDualGraph, _closed_adjacency

if TYPE_CHECKING:
    from .construction import Cartogram

#: Per-region topology value marking a region that could not be placed
#: without overlap.
TOPOLOGY_SENTINEL = 100


def _bearing_matrix(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """b[i, j] = angle of the vector from center i to center j (diagonal 0)."""
    return np.arctan2(y[None, :] - y[:, None], x[None, :] - x[:, None])


def _wrapped_deviation(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise |a - b| folded into [0, pi] for bearings in (-pi, pi]."""
    d = np.abs(a - b)
    return np.where(d > np.pi, 2.0 * np.pi - d, d)


def _adjacency_from_graph(graph: PseudoDualGraph) -> np.ndarray:
    adj = np.zeros((graph.n, graph.n), dtype=bool)
    for i, j in graph.edges:
        adj[i, j] = True
        adj[j, i] = True
    return adj


def _graph_from_adjacency(adj: np.ndarray) -> PseudoDualGraph:
    iu, ju = np.nonzero(np.triu(adj, 1))
    return PseudoDualGraph(
        n=adj.shape[0], edges=frozenset((int(a), int(b)) for a, b in zip(iu, ju))
    )


def output_dual_graph(cart: "Cartogram") -> PseudoDualGraph:
    """Adjacency graph of the cartogram boxes (no connectivity demand)."""
    return _graph_from_adjacency(_closed_adjacency(cart.x, cart.y, cart.dx, cart.dy))


def _check_pair(m: InputMap, cart: "Cartogram") -> None:
    if len(m) != len(cart):
        raise ValueError(
            f"map has {len(m)} regions but cartogram has {len(cart)}"
        )
    if m.names != cart.names:
        raise ValueError("cartogram regions do not match the map (names differ)")


def d_A(m: InputMap, cart: "Cartogram") -> float:
    """Total absolute deviation of box areas from the z-proportional targets."""
    _check_pair(m, cart)
    actual = 4.0 * cart.dx * cart.dy
    return float(np.abs(actual - m._compiled.desired).sum())


def d_S(m: InputMap, cart: "Cartogram") -> float:
    """Total absolute deviation of height/width ratios from the input's."""
    _check_pair(m, cart)
    c = m._compiled
    return float(np.abs(cart.dy / cart.dx - c.dy / c.dx).sum())


def d_T(m: InputMap, cart: "Cartogram") -> float:
    """Share of adjacencies disturbed: symmetric difference over union.

    0 when input and output boxes induce the same graph, 1 when the edge
    sets are disjoint; 0 by convention when both graphs are empty.
    """
    _check_pair(m, cart)
    e_in = m._compiled.adjacency
    e_out = _closed_adjacency(cart.x, cart.y, cart.dx, cart.dy)
    iu = np.triu_indices(len(m), 1)
    sym = int((e_in ^ e_out)[iu].sum())
    union = int((e_in | e_out)[iu].sum())
    return sym / union if union else 0.0


def d_R(m: InputMap, cart: "Cartogram") -> float:
    """Mean wrapped bearing deviation over all region pairs, in [0, pi].

    Invariant under translating or uniformly scaling the cartogram,
    which is why it drives the default fitness.
    """
    _check_pair(m, cart)
    c = m._compiled
    delta = _wrapped_deviation(
        _bearing_matrix(c.x, c.y), _bearing_matrix(cart.x, cart.y)
    )
    iu = np.triu_indices(len(m), 1)
    return float(delta[iu].mean())


def per_region_errors(
    m: InputMap,
    cart: "Cartogram",
    graph_in: PseudoDualGraph,
    graph_out: PseudoDualGraph,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-region diagnostics against the given adjacency graphs.

    Returns ``(topology, relpos, relposnh)``: the neighbor-set symmetric
    difference count (with TOPOLOGY_SENTINEL preserved at regions the
    construction failed to place), the mean wrapped bearing deviation
    against all other regions, and the same mean restricted to input
    neighbors (0 for isolated regions).
    """
    _check_pair(m, cart)
    c = m._compiled
    adj_in = _adjacency_from_graph(graph_in)
    adj_out = _adjacency_from_graph(graph_out)
    delta = _wrapped_deviation(
        _bearing_matrix(c.x, c.y), _bearing_matrix(cart.x, cart.y)
    )
    topology, relpos, relposnh = _per_region_arrays(adj_in, adj_out, delta)
    topology = np.where(cart.failed, TOPOLOGY_SENTINEL, topology).astype(np.int32)
    return topology, relpos, relposnh


def _per_region_arrays(
    adj_in: np.ndarray, adj_out: np.ndarray, delta: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = delta.shape[0]
    topology = (adj_in ^ adj_out).sum(axis=1).astype(np.int32)
    relpos = delta.sum(axis=1) / (n - 1)
    degree = adj_in.sum(axis=1)
    neighbor_sum = (delta * adj_in).sum(axis=1)
    relposnh = np.where(degree > 0, neighbor_sum / np.maximum(degree, 1), 0.0)
    return topology, relpos, relposnh


@dataclass(frozen=True)
class SummaryStats:
    """Aggregate quality figures for one (map, cartogram) pair."""

    n_regions: int
    area_error: float
    topology_error: int
    failed_regions: int
    relative_position_error: float
    screen_filling_pct: float
    bbox: tuple[float, float, float, float]  # xmin, xmax, ymin, ymax


def summarize(m: InputMap, cart: "Cartogram") -> SummaryStats:
    """Summary statistics of a cartogram against its input map.

    The area error averages the normalized per-region deviation
    |A - A_target| / (A + A_target) weighted by target area, so it is 0
    exactly when every box hits its target. The topology error sums the
    per-region neighbor-set differences over regions that placed
    cleanly; regions the construction dropped with overlap are counted
    separately in ``failed_regions``.
    """
    _check_pair(m, cart)
    c = m._compiled
    n = len(m)
    actual = 4.0 * cart.dx * cart.dy
    desired = c.desired
    area_error = float(
        (desired * (np.abs(actual - desired) / (actual + desired))).sum()
        / desired.sum()
    )
    adj_out = _closed_adjacency(cart.x, cart.y, cart.dx, cart.dy)
    delta = _wrapped_deviation(
        _bearing_matrix(c.x, c.y), _bearing_matrix(cart.x, cart.y)
    )
    topology, _, _ = _per_region_arrays(c.adjacency, adj_out, delta)
    ok = ~cart.failed
    xmin = float((cart.x - cart.dx).min())
    xmax = float((cart.x + cart.dx).max())
    ymin = float((cart.y - cart.dy).min())
    ymax = float((cart.y + cart.dy).max())
    iu = np.triu_indices(n, 1)
    return SummaryStats(
        n_regions=n,
        area_error=area_error,
        topology_error=int(topology[ok].sum()),
        failed_regions=int(cart.failed.sum()),
        relative_position_error=float(delta[iu].mean()),
        screen_filling_pct=float(100.0 * actual.sum() / ((xmax - xmin) * (ymax - ymin))),
        bbox=(xmin, xmax, ymin, ymax),
    )
