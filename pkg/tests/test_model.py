"""Input schema, dual graph, desired areas, checkerboard generator."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectcarto.errors import DisconnectedMapError, MapValidationError
from rectcarto.model import (
    InputMap,
    InputRegion,
    Permutation,
    build_dual_graph,
    checkerboard,
    desired_areas,
)
from rectcarto.rng import Xoshiro256

from conftest import closed_neighbor_sets, edge_set, random_connected_map


def square(x, y, half, z, name):
    return InputRegion(x=x, y=y, dx=half, dy=half, z=z, name=name)


class TestInputValidation:
    def test_needs_two_regions(self):
        with pytest.raises(MapValidationError):
            InputMap([square(0, 0, 1, 1, "only")])

    @pytest.mark.parametrize("field,value", [("dx", 0.0), ("dy", -1.0), ("z", 0.0), ("z", -3.0)])
    def test_rejects_non_positive(self, field, value):
        kwargs = dict(x=0.0, y=0.0, dx=1.0, dy=1.0, z=1.0, name="a")
        kwargs[field] = value
        with pytest.raises(MapValidationError):
            InputRegion(**kwargs)

    @pytest.mark.parametrize("field", ["x", "y", "dx", "dy", "z"])
    def test_rejects_non_finite(self, field):
        kwargs = dict(x=0.0, y=0.0, dx=1.0, dy=1.0, z=1.0, name="a")
        kwargs[field] = math.inf
        with pytest.raises(MapValidationError):
            InputRegion(**kwargs)

    def test_duplicate_names_rejected_with_rows(self):
        with pytest.raises(MapValidationError) as exc:
            InputMap([square(0, 0, 1, 1, "dup"), square(1, 0, 1, 1, "dup")])
        assert "dup" in str(exc.value)

    def test_region_access(self):
        m = InputMap([square(0, 0, 1, 1, "a"), square(1, 0, 1, 1, "b")])
        assert len(m) == 2
        assert m.names == ("a", "b")
        assert [r.name for r in m] == ["a", "b"]
        assert m[1].name == "b"


class TestDualGraph:
    def test_two_by_two_checkerboard_is_complete(self):
        # four unit cells sharing edges and the center corner
        g = build_dual_graph(checkerboard(2))
        assert g.n == 4
        assert g.edges == frozenset(
            {(0, 1), (0, 2), (1, 3), (2, 3), (0, 3), (1, 2)}
        )

    def test_single_overlapping_pair(self):
        m = InputMap([square(0, 0, 1, 1, "a"), square(1.5, 0, 1, 1, "b")])
        g = build_dual_graph(m)
        assert g.edges == frozenset({(0, 1)})

    def test_disjoint_map_raises_with_components(self):
        m = InputMap(
            [
                square(0, 0, 1, 1, "a"),
                square(1, 0, 1, 1, "b"),
                square(50, 0, 1, 1, "far"),
            ]
        )
        with pytest.raises(DisconnectedMapError) as exc:
            build_dual_graph(m)
        assert "far" in str(exc.value)

    def test_matches_brute_force_on_random_maps(self):
        for seed in range(20):
            m = random_connected_map(seed, 12)
            g = build_dual_graph(m)
            xs = [r.x for r in m]
            ys = [r.y for r in m]
            dxs = [r.dx for r in m]
            dys = [r.dy for r in m]
            assert g.edges == edge_set(closed_neighbor_sets(xs, ys, dxs, dys))

    def test_relabeling_relabels_edges(self):
        m = random_connected_map(3, 8)
        g = build_dual_graph(m)
        perm = Xoshiro256(9).permutation(len(m))
        relabeled = InputMap([m[perm[i]] for i in range(len(m))])
        g2 = build_dual_graph(relabeled)
        inverse = {perm[i]: i for i in range(len(m))}
        expected = frozenset(
            tuple(sorted((inverse[i], inverse[j]))) for i, j in g.edges
        )
        assert g2.edges == expected

    def test_neighbor_and_degree_helpers(self):
        g = build_dual_graph(checkerboard(2))
        assert g.neighbors(0) == {1, 2, 3}
        assert g.degree(0) == 3


class TestDesiredAreas:
    def test_checkerboard_eight_targets(self):
        m = checkerboard(8)
        desired = desired_areas(m)
        for region, want in zip(m, desired):
            assert want == pytest.approx(1.6 if region.z == 4.0 else 0.4, abs=1e-12)

    def test_equal_regions_keep_their_area(self):
        m = InputMap([square(0, 0, 1, 1, "a"), square(1, 0, 1, 1, "b")])
        assert desired_areas(m) == pytest.approx([4.0, 4.0])

    @given(st.integers(min_value=0, max_value=1000), st.integers(min_value=2, max_value=20))
    def test_total_area_preserved(self, seed, n):
        m = random_connected_map(seed, n)
        desired = desired_areas(m)
        total = sum(4.0 * r.dx * r.dy for r in m)
        assert sum(desired) == pytest.approx(total, rel=1e-9)

    def test_proportional_to_z(self):
        m = InputMap([square(0, 0, 1, 1, "a"), square(1, 0, 1, 3, "b")])
        a, b = desired_areas(m)
        assert b / a == pytest.approx(3.0, rel=1e-12)


class TestCheckerboard:
    def test_size_two(self):
        m = checkerboard(2)
        assert len(m) == 4
        zs = sorted(r.z for r in m)
        assert zs == [1.0, 1.0, 4.0, 4.0]

    def test_cell_layout(self):
        m = checkerboard(3)
        by_name = {r.name: r for r in m}
        cell = by_name["cell_2_3"]
        assert (cell.x, cell.y, cell.dx, cell.dy) == (2.0, 3.0, 0.5, 0.5)

    def test_parity(self):
        m = checkerboard(4)
        by_name = {r.name: r for r in m}
        assert by_name["cell_1_1"].z == 4.0  # (1+1) even
        assert by_name["cell_2_1"].z == 1.0

    def test_connected_for_all_small_n(self):
        for n in range(2, 9):
            g = build_dual_graph(checkerboard(n))
            assert g.n == n * n

    def test_too_small(self):
        with pytest.raises(MapValidationError):
            checkerboard(1)


class TestPermutation:
    def test_identity_reverse_random(self):
        assert Permutation.identity(4).order == (0, 1, 2, 3)
        assert Permutation.reverse(4).order == (3, 2, 1, 0)
        p = Permutation.random(6, Xoshiro256(1))
        assert sorted(p.order) == list(range(6))

    def test_rejects_non_bijection(self):
        with pytest.raises(MapValidationError):
            Permutation((0, 0, 1))
        with pytest.raises(MapValidationError):
            Permutation((1, 2, 3))

    def test_sequence_protocol(self):
        p = Permutation((2, 0, 1))
        assert len(p) == 3
        assert list(p) == [2, 0, 1]
        assert p[0] == 2
