"""Construction heuristic: placement semantics, exactness, determinism."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectcarto.construction import (
    Cartogram,
    construct,
    construct_with_stats,
    identity_cartogram,
    scaled_extents,
)
from rectcarto.errors import DisconnectedMapError, MapValidationError
from rectcarto.metrics import TOPOLOGY_SENTINEL, d_A, d_S
from rectcarto.model import InputMap, InputRegion, Permutation, checkerboard

from conftest import EPS, closed_neighbor_sets, random_connected_map, star_overload_map


def square(x, y, half, z, name):
    return InputRegion(x=x, y=y, dx=half, dy=half, z=z, name=name)


def two_squares() -> InputMap:
    return InputMap([square(0.0, 0.0, 1.0, 1.0, "a"), square(1.0, 0.0, 1.0, 1.0, "b")])


class TestScaledExtents:
    def test_frozen_example(self):
        region = InputRegion(x=0, y=0, dx=2.0, dy=1.0, z=1.0, name="r")
        assert scaled_extents(region, 32.0) == pytest.approx((4.0, 2.0), abs=1e-12)

    def test_square_stays_square(self):
        region = square(0, 0, 3.0, 1.0, "r")
        assert scaled_extents(region, 4.0) == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_identity_when_area_matches(self):
        region = InputRegion(x=0, y=0, dx=0.7, dy=1.3, z=1.0, name="r")
        sdx, sdy = scaled_extents(region, 4.0 * 0.7 * 1.3)
        assert (sdx, sdy) == pytest.approx((0.7, 1.3), rel=1e-12)

    def test_rejects_non_positive_target(self):
        with pytest.raises(MapValidationError):
            scaled_extents(square(0, 0, 1, 1, "r"), 0.0)

    @given(
        st.floats(min_value=1e-3, max_value=1e3),
        st.floats(min_value=1e-3, max_value=1e3),
        st.floats(min_value=1e-6, max_value=1e6),
    )
    def test_area_and_ratio_exact(self, dx, dy, target):
        region = InputRegion(x=0, y=0, dx=dx, dy=dy, z=1.0, name="r")
        sdx, sdy = scaled_extents(region, target)
        assert 4.0 * sdx * sdy == pytest.approx(target, rel=1e-12)
        assert sdy / sdx == pytest.approx(dy / dx, rel=1e-12)


class TestTwoSquares:
    def test_places_second_tangent_due_east(self):
        cart = construct(two_squares())
        assert cart.feasible
        assert (cart.x[0], cart.y[0]) == (0.0, 0.0)
        assert cart.x[1] == pytest.approx(2.0, abs=1e-12)
        assert cart.y[1] == pytest.approx(0.0, abs=1e-12)
        assert list(cart.dfs_num) == [1, 2]
        assert not cart.failed.any()

    def test_reverse_order_starts_at_second(self):
        cart = construct(two_squares(), Permutation.reverse(2))
        assert list(cart.dfs_num) == [2, 1]
        assert (cart.x[1], cart.y[1]) == (1.0, 0.0)
        # first region keeps its input center, the other lands due west
        assert cart.x[0] == pytest.approx(-1.0, abs=1e-12)

    def test_diagnostics_zero_when_topology_kept(self):
        cart = construct(two_squares())
        assert list(cart.topology_errors) == [0, 0]
        assert cart.relpos_errors == pytest.approx([0.0, 0.0], abs=1e-12)


class TestExactness:
    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_checkerboards(self, n):
        m = checkerboard(n)
        cart = construct(m)
        assert cart.feasible
        desired_total = sum(4.0 * r.dx * r.dy for r in m)
        assert d_A(m, cart) <= 1e-9 * desired_total
        assert d_S(m, cart) <= 1e-9

    def test_exactness_holds_even_when_infeasible(self):
        m = star_overload_map()
        cart = construct(m)
        assert not cart.feasible
        assert cart.failed.any()
        desired_total = sum(4.0 * r.dx * r.dy for r in m)
        assert d_A(m, cart) <= 1e-9 * desired_total
        assert d_S(m, cart) <= 1e-9


class TestSentinel:
    def test_overloaded_ring_fails_some_regions(self):
        cart = construct(star_overload_map())
        assert not cart.feasible
        failed = cart.failed
        assert failed.sum() >= 1
        assert not failed[0]  # the hub is placed first and always fits
        assert all(cart.topology_errors[i] == TOPOLOGY_SENTINEL for i in np.nonzero(failed)[0])
        assert all(cart.topology_errors[i] != TOPOLOGY_SENTINEL for i in np.nonzero(~failed)[0])

    def test_failed_regions_still_have_dfs_numbers(self):
        cart = construct(star_overload_map())
        assert sorted(cart.dfs_num) == list(range(1, len(cart) + 1))


class TestDeterminism:
    def test_bit_identical_repeats(self):
        m = random_connected_map(17, 30)
        a = construct(m)
        b = construct(m)
        assert np.array_equal(a.x, b.x)
        assert np.array_equal(a.y, b.y)
        assert np.array_equal(a.dfs_num, b.dfs_num)
        assert np.array_equal(a.failed, b.failed)

    def test_order_changes_layout(self):
        m = checkerboard(4)
        a = construct(m)
        b = construct(m, Permutation.reverse(16))
        assert not (np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y))


class TestStrategies:
    @pytest.mark.parametrize("seed", range(8))
    def test_indexed_equals_naive(self, seed):
        m = random_connected_map(seed, 25)
        indexed, st_i = construct_with_stats(m, use_index=True)
        naive, st_n = construct_with_stats(m, use_index=False)
        assert np.array_equal(indexed.x, naive.x)
        assert np.array_equal(indexed.y, naive.y)
        assert np.array_equal(indexed.dfs_num, naive.dfs_num)
        assert st_i.intersection_tests <= st_n.intersection_tests

    def test_stats_expose_kernel_and_positive_count(self, kernel):
        m = checkerboard(3)
        cart, stats = construct_with_stats(m, kernel=kernel)
        assert stats.kernel == kernel
        assert stats.intersection_tests > 0
        assert cart.feasible


class TestFeasibilityInvariants:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=24))
    def test_feasible_outputs_pass_independent_checks(self, seed, n):
        m = random_connected_map(seed, n)
        cart = construct(m)
        if not cart.feasible:
            return
        xs, ys, dxs, dys = cart.x, cart.y, cart.dx, cart.dy
        # no pair may interpenetrate deeper than the tangency slack
        for i in range(n):
            for j in range(i + 1, n):
                px = (dxs[i] + dxs[j]) - abs(xs[i] - xs[j])
                py = (dys[i] + dys[j]) - abs(ys[i] - ys[j])
                assert not (px > EPS and py > EPS), (i, j, px, py)
        # closed-touch graph must be connected
        neighbors = closed_neighbor_sets(xs, ys, dxs, dys)
        seen = {0}
        frontier = [0]
        while frontier:
            for nxt in neighbors[frontier.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        assert seen == set(range(n))

    @given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=24))
    @settings(max_examples=60, deadline=None)
    def test_dfs_num_is_bijection(self, seed, n):
        cart = construct(random_connected_map(seed, n))
        assert sorted(cart.dfs_num) == list(range(1, n + 1))


class TestDegenerateInputs:
    def test_coincident_centers_fall_back_to_east(self):
        m = InputMap(
            [
                square(0.0, 0.0, 1.0, 1.0, "a"),
                InputRegion(x=0.0, y=0.0, dx=0.5, dy=0.5, z=1.0, name="b"),
            ]
        )
        cart = construct(m)
        assert cart.feasible
        # undefined bearing resolves to alpha = 0: due east of the anchor
        assert cart.y[1] == pytest.approx(0.0, abs=1e-12)
        assert cart.x[1] > cart.x[0]

    def test_disconnected_raises(self):
        m = InputMap([square(0, 0, 1, 1, "a"), square(10, 0, 1, 1, "b")])
        with pytest.raises(DisconnectedMapError):
            construct(m)

    def test_wrong_order_length(self):
        with pytest.raises(MapValidationError):
            construct(two_squares(), [0, 1, 2])


class TestCartogramContainer:
    def test_regions_view(self):
        m = two_squares()
        cart = construct(m)
        regions = cart.regions
        assert [r.name for r in regions] == ["a", "b"]
        assert regions[0].dfs_num == 1
        assert regions[1].rect.x == pytest.approx(2.0)

    def test_bbox(self):
        cart = construct(two_squares())
        xmin, xmax, ymin, ymax = cart.bbox()
        assert (xmin, xmax) == pytest.approx((-1.0, 3.0), abs=1e-12)
        assert (ymin, ymax) == pytest.approx((-1.0, 1.0), abs=1e-12)

    def test_identity_cartogram_mirrors_input(self):
        m = checkerboard(3)
        cart = identity_cartogram(m)
        assert np.array_equal(cart.x, [r.x for r in m])
        assert not cart.feasible

    def test_from_arrays_defaults(self):
        cart = Cartogram.from_arrays(
            names=("a", "b"),
            z=np.array([1.0, 1.0]),
            x=np.array([0.0, 2.0]),
            y=np.array([0.0, 0.0]),
            dx=np.array([1.0, 1.0]),
            dy=np.array([1.0, 1.0]),
        )
        assert cart.feasible
        assert list(cart.dfs_num) == [1, 2]
        assert not cart.failed.any()
        assert not cart.topology_errors.any()
