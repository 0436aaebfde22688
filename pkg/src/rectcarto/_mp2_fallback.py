"""Pure-Python placement kernel, the import-time fallback.

Semantics and floating-point operation order are kept exactly in sync
with ``_mp2_kernel.pyx`` so both kernels produce bit-identical layouts
and identical overlap-test counts. Keep any change mirrored there.

The kernel walks the adjacency graph depth-first in permutation
priority. Each region after the first is placed tangent to an anchor:
starting from the input bearing between the two centers, ring angles
are swept outward in one-degree steps (0, +1, -1, ..., +179, -179,
+180) until a position is free of overlap. If every angle around the
parent fails, each already-placed input neighbor is tried as anchor in
priority order; if those fail too, the region is dropped at the
parent's initial bearing regardless of overlap and flagged failed.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right, insort

_STEP = math.pi / 180.0
_EPS = 1e-9


def run_construction(
    in_x, in_y, half_w, half_h, indptr, indices, order, use_index,
    out_x, out_y, dfs_num, failed,
):
    """Place every region; fills the out arrays and returns the number of
    exact rectangle-pair overlap tests performed."""
    n = len(in_x)
    ix = [float(v) for v in in_x]
    iy = [float(v) for v in in_y]
    hw = [float(v) for v in half_w]
    hh = [float(v) for v in half_h]
    iptr = [int(v) for v in indptr]
    nbr = [int(v) for v in indices]
    seq = [int(v) for v in order]

    rank = [0] * n
    for r, region in enumerate(seq):
        rank[region] = r

    visited = [False] * n
    px = [0.0] * n
    py = [0.0] * n

    placed_sorted: list[int] = []  # placed ids ascending; the naive scan order
    keys: list[float] = []  # low-x edges of placed boxes, sorted
    kids: list[int] = []  # ids parallel to keys
    max_width = 0.0
    tests = 0

    def overlap_exists(cx: float, cy: float, cw: float, ch: float) -> bool:
        # candidates are always visited in ascending id so both
        # strategies short-circuit on the same first hit
        nonlocal tests
        if use_index:
            sel = kids[bisect_left(keys, cx - cw - max_width) : bisect_right(keys, cx + cw)]
            sel.sort()
        else:
            sel = placed_sorted
        for rid in sel:
            tests += 1
            if abs(cx - px[rid]) < cw + hw[rid] - _EPS and abs(cy - py[rid]) < ch + hh[rid] - _EPS:
                return True
        return False

    def ring_point(anchor: int, b: int, theta: float) -> tuple[float, float]:
        w = hw[anchor] + hw[b]
        h = hh[anchor] + hh[b]
        c = math.cos(theta)
        s = math.sin(theta)
        if abs(c) * h >= abs(s) * w:
            return px[anchor] + math.copysign(w, c), py[anchor] + w * s / abs(c)
        return px[anchor] + h * c / abs(s), py[anchor] + math.copysign(h, s)

    def input_bearing(anchor: int, b: int) -> float:
        dxi = ix[b] - ix[anchor]
        dyi = iy[b] - iy[anchor]
        if dxi == 0.0 and dyi == 0.0:
            return 0.0
        return math.atan2(dyi, dxi)

    def sweep_anchor(anchor: int, b: int) -> tuple[float, float] | None:
        alpha = input_bearing(anchor, b)
        for k in range(181):
            for sign in (1.0, -1.0):
                if sign < 0.0 and (k == 0 or k == 180):
                    continue  # -0 and -180 duplicate their + twins
                cx, cy = ring_point(anchor, b, alpha + sign * (k * _STEP))
                if not overlap_exists(cx, cy, hw[b], hh[b]):
                    return cx, cy
        return None

    def place(b: int, cx: float, cy: float, num: int) -> None:
        px[b] = cx
        py[b] = cy
        dfs_num[b] = num
        insort(placed_sorted, b)
        if use_index:
            key = cx - hw[b]
            pos = bisect_right(keys, key)
            keys.insert(pos, key)
            kids.insert(pos, b)
            nonlocal max_width
            if 2.0 * hw[b] > max_width:
                max_width = 2.0 * hw[b]

    stack: list[tuple[int, int]] = []  # (region, parent); pops ascend in rank

    def push_children(u: int) -> None:
        unvisited = [v for v in nbr[iptr[u] : iptr[u + 1]] if not visited[v]]
        unvisited.sort(key=rank.__getitem__, reverse=True)
        for v in unvisited:
            stack.append((v, u))

    root = seq[0]
    visited[root] = True
    place(root, ix[root], iy[root], 1)
    push_children(root)
    counter = 1

    while stack:
        b, parent = stack.pop()
        if visited[b]:
            continue
        visited[b] = True
        pos = sweep_anchor(parent, b)
        if pos is None:
            others = [
                v
                for v in nbr[iptr[b] : iptr[b + 1]]
                if visited[v] and v != parent
            ]
            others.sort(key=rank.__getitem__)
            for anchor in others:
                pos = sweep_anchor(anchor, b)
                if pos is not None:
                    break
        if pos is None:
            # no tangent position anywhere: drop at the parent's initial
            # bearing and mark the region failed
            pos = ring_point(parent, b, input_bearing(parent, b))
            failed[b] = 1
        counter += 1
        place(b, pos[0], pos[1], counter)
        push_children(b)

    for i in range(n):
        out_x[i] = px[i]
        out_y[i] = py[i]
    return tests
