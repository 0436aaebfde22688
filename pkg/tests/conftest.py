"""Shared fixtures: map generators and brute-force metric oracles.

The oracles use plain Python loops and raw float arithmetic on purpose;
they share no code with the package so the two sides can disagree.
"""

from __future__ import annotations

import math

import pytest

from rectcarto.model import InputMap, InputRegion
from rectcarto.rng import Xoshiro256

#: Tangency slack documented by the package (absolute, map units).
EPS = 1e-9


def random_connected_map(seed: int, n: int) -> InputMap:
    """Random map whose dual graph is connected by construction.

    Every new region's center is sampled inside the closed-adjacency
    range of a previously placed region, so an edge to it is guaranteed.
    """
    rng = Xoshiro256(seed)
    regions = [
        InputRegion(
            x=0.0,
            y=0.0,
            dx=0.2 + 1.3 * rng.random(),
            dy=0.2 + 1.3 * rng.random(),
            z=0.1 + 9.9 * rng.random(),
            name="r_1",
        )
    ]
    for i in range(2, n + 1):
        anchor = regions[rng.randrange(len(regions))]
        dx = 0.2 + 1.3 * rng.random()
        dy = 0.2 + 1.3 * rng.random()
        x = anchor.x + (anchor.dx + dx) * (2.0 * rng.random() - 1.0)
        y = anchor.y + (anchor.dy + dy) * (2.0 * rng.random() - 1.0)
        regions.append(
            InputRegion(x=x, y=y, dx=dx, dy=dy, z=0.1 + 9.9 * rng.random(), name=f"r_{i}")
        )
    return InputMap(regions)


def star_overload_map(n_satellites: int = 12) -> InputMap:
    """Hub with many mutually non-adjacent satellites.

    The satellites' z values dwarf the hub's, so their scaled boxes
    cannot all sit tangent to the tiny scaled hub: placement must fail
    for some of them, which exercises the sentinel path.
    """
    regions = [InputRegion(x=0.0, y=0.0, dx=1.0, dy=1.0, z=0.001, name="hub")]
    for k in range(n_satellites):
        angle = 2.0 * math.pi * k / n_satellites
        regions.append(
            InputRegion(
                x=1.1 * math.cos(angle),
                y=1.1 * math.sin(angle),
                dx=0.15,
                dy=0.15,
                z=1.0,
                name=f"sat_{k + 1}",
            )
        )
    return InputMap(regions)


def closed_neighbor_sets(
    xs, ys, dxs, dys, eps: float = EPS
) -> list[set[int]]:
    """All-pairs closed-touch adjacency, written as a bare double loop."""
    n = len(xs)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if (
                abs(xs[i] - xs[j]) <= dxs[i] + dxs[j] + eps
                and abs(ys[i] - ys[j]) <= dys[i] + dys[j] + eps
            ):
                neighbors[i].add(j)
                neighbors[j].add(i)
    return neighbors


def edge_set(neighbors: list[set[int]]) -> frozenset[tuple[int, int]]:
    return frozenset(
        (i, j) for i, adj in enumerate(neighbors) for j in adj if i < j
    )


def wrapped_bearing_dev(ax, ay, bx, by, cx, cy, dx, dy) -> float:
    """|bearing(a->b) - bearing(c->d)| folded into [0, pi]."""
    t1 = math.atan2(by - ay, bx - ax)
    t2 = math.atan2(dy - cy, dx - cx)
    d = abs(t1 - t2) % (2.0 * math.pi)
    return 2.0 * math.pi - d if d > math.pi else d


def oracle_d_t(in_neighbors: list[set[int]], out_neighbors: list[set[int]]) -> float:
    e_in = edge_set(in_neighbors)
    e_out = edge_set(out_neighbors)
    union = e_in | e_out
    if not union:
        return 0.0
    return len(e_in ^ e_out) / len(union)


def oracle_d_r(in_xy, out_xy) -> float:
    n = len(in_xy)
    total = 0.0
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += wrapped_bearing_dev(
                in_xy[i][0], in_xy[i][1], in_xy[j][0], in_xy[j][1],
                out_xy[i][0], out_xy[i][1], out_xy[j][0], out_xy[j][1],
            )
            count += 1
    return total / count


def oracle_per_region(in_xy, out_xy, in_neighbors, out_neighbors):
    """Per-region (topology, relpos, relposnh) by direct enumeration."""
    n = len(in_xy)
    topology = [len(in_neighbors[j] ^ out_neighbors[j]) for j in range(n)]
    relpos = []
    relposnh = []
    for j in range(n):
        devs = {
            i: wrapped_bearing_dev(
                in_xy[j][0], in_xy[j][1], in_xy[i][0], in_xy[i][1],
                out_xy[j][0], out_xy[j][1], out_xy[i][0], out_xy[i][1],
            )
            for i in range(n)
            if i != j
        }
        relpos.append(sum(devs.values()) / len(devs))
        nh = [devs[i] for i in sorted(in_neighbors[j])]
        relposnh.append(sum(nh) / len(nh) if nh else 0.0)
    return topology, relpos, relposnh


def available_kernels() -> list[str]:
    from rectcarto.engine import get_kernel

    names = ["python"]
    try:
        get_kernel("compiled")
    except ImportError:
        pass
    else:
        names.append("compiled")
    return names


@pytest.fixture(params=available_kernels())
def kernel(request) -> str:
    return request.param
