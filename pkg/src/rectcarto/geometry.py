"""Axis-aligned rectangle primitives and a sorted-interval spatial index.

Rectangles follow the map convention used throughout the package:
``(x, y)`` is the center and ``(dx, dy)`` are strictly positive
half-extents, so the bounding box spans ``[x - dx, x + dx] x
[y - dy, y + dy]`` and its area is ``4 * dx * dy``.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable

# Absolute slack (map units) separating "touching" from "overlapping":
# closed-mode tests treat gaps up to EPS as contact, open-mode tests
# ignore interpenetration up to EPS, so tangent placements never read
# as overlaps after floating-point rounding.
EPS = 1e-9

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by center and half-extents."""

    x: float
    y: float
    dx: float
    dy: float

    def __post_init__(self) -> None:
        if not (self.dx > 0.0 and self.dy > 0.0):
            raise ValueError(
                f"half-extents must be positive, got dx={self.dx!r} dy={self.dy!r}"
            )

    @property
    def xmin(self) -> float:
        return self.x - self.dx

    @property
    def xmax(self) -> float:
        return self.x + self.dx

    @property
    def ymin(self) -> float:
        return self.y - self.dy

    @property
    def ymax(self) -> float:
        return self.y + self.dy


def area(r: Rect) -> float:
    """Area of the full box, ``4 * dx * dy``."""
    return 4.0 * r.dx * r.dy


def bearing(p: tuple[float, float], q: tuple[float, float]) -> float:
    """Angle of the vector p -> q in (-pi, pi], measured from the +x axis.

    Due east is 0, due north pi/2, due west pi. Raises ValueError for
    coincident points, where the bearing is undefined; callers that need
    a total function substitute their own convention.
    """
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("bearing is undefined for coincident points")
    theta = math.atan2(dy, dx)
    # atan2 can round to exactly -pi (dy subnormal, dx < 0); keep (-pi, pi]
    return math.pi if theta == -math.pi else theta


def wrap_angle(a: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    a = math.fmod(a, _TWO_PI)
    if a <= -math.pi:
        a += _TWO_PI
    elif a > math.pi:
        a -= _TWO_PI
    return a


def angle_diff(a: float, b: float) -> float:
    """Absolute circular difference |a - b| folded into [0, pi]."""
    d = math.fmod(abs(a - b), _TWO_PI)
    if d > math.pi:
        d = _TWO_PI - d
    return d


def intersects(a: Rect, b: Rect, mode: str = "closed", eps: float = EPS) -> bool:
    """Do two rectangles intersect?

    ``closed``: the boxes share at least one point, so touching edges and
    corners count. ``open``: the interiors overlap, so touching does not
    count. Contact is resolved with an absolute slack of ``eps``.
    """
    sx = a.dx + b.dx
    sy = a.dy + b.dy
    if mode == "closed":
        return abs(a.x - b.x) <= sx + eps and abs(a.y - b.y) <= sy + eps
    if mode == "open":
        return abs(a.x - b.x) < sx - eps and abs(a.y - b.y) < sy - eps
    raise ValueError(f"unknown intersection mode {mode!r}")


def placement_ring(
    anchor: Rect, extents: tuple[float, float], theta: float
) -> tuple[float, float]:
    """Center at which a box with the given half-extents touches the anchor.

    The tangent positions of such a box form the boundary of the anchor
    expanded by the candidate half-extents (a Minkowski sum). The
    returned point is where the ray leaving the anchor center at angle
    ``theta`` crosses that boundary; a ray through a corner returns the
    corner itself, touching the anchor on both axes.
    """
    bdx, bdy = extents
    if not (bdx > 0.0 and bdy > 0.0):
        raise ValueError("candidate half-extents must be positive")
    w = anchor.dx + bdx
    h = anchor.dy + bdy
    c = math.cos(theta)
    s = math.sin(theta)
    if abs(c) * h >= abs(s) * w:
        # the vertical edge of the expanded boundary binds
        return anchor.x + math.copysign(w, c), anchor.y + w * s / abs(c)
    return anchor.x + h * c / abs(s), anchor.y + math.copysign(h, s)


class SpatialIndex:
    """Sorted multiset of rectangles keyed on the low-x edge.

    A query prunes to the key window that could overlap the probe
    horizontally (using the widest stored rectangle as the lookback
    margin) and then applies the exact open-mode test, so results equal
    a full linear scan. Single writer, multiple readers; no concurrent
    mutation.
    """

    def __init__(self, items: Iterable[tuple[int, Rect]] = ()) -> None:
        self._keys: list[float] = []
        self._ids: list[int] = []
        self._rects: dict[int, Rect] = {}
        self._max_width = 0.0
        for rid, rect in items:
            self.insert(rid, rect)

    def __len__(self) -> int:
        return len(self._rects)

    def __contains__(self, rid: int) -> bool:
        return rid in self._rects

    @property
    def max_width(self) -> float:
        """Widest stored box (full width), maintained incrementally."""
        return self._max_width

    def insert(self, rid: int, rect: Rect) -> None:
        if rid in self._rects:
            raise KeyError(f"id {rid!r} already indexed")
        key = rect.x - rect.dx
        pos = bisect_right(self._keys, key)
        self._keys.insert(pos, key)
        self._ids.insert(pos, rid)
        self._rects[rid] = rect
        if 2.0 * rect.dx > self._max_width:
            self._max_width = 2.0 * rect.dx

    def candidates(self, probe: Rect) -> list[int]:
        """Ids in the pruning window for ``probe``: a superset of every
        stored rectangle that overlaps it horizontally."""
        lo = probe.x - probe.dx - self._max_width
        hi = probe.x + probe.dx
        start = bisect_left(self._keys, lo)
        stop = bisect_right(self._keys, hi)
        return self._ids[start:stop]

    def query(self, probe: Rect) -> set[int]:
        """Ids of exactly the stored rectangles whose interiors overlap
        ``probe`` (open mode)."""
        rects = self._rects
        return {
            rid
            for rid in self.candidates(probe)
            if intersects(rects[rid], probe, "open")
        }
