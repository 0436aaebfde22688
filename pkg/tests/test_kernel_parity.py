"""Bit-for-bit agreement between the compiled kernel and the fallback."""

from __future__ import annotations

import numpy as np
import pytest

from rectcarto.construction import construct_with_stats
from rectcarto.model import Permutation, checkerboard
from rectcarto.rng import Xoshiro256

from conftest import random_connected_map, star_overload_map

pytest.importorskip("rectcarto._mp2_kernel", reason="compiled kernel not built")


def corpus():
    maps = [checkerboard(n) for n in range(2, 7)]
    maps += [random_connected_map(seed, 4 + 3 * seed) for seed in range(1, 7)]
    maps.append(star_overload_map())
    return maps


def assert_same_run(m, order, use_index):
    cart_c, stats_c = construct_with_stats(m, order, use_index=use_index, kernel="compiled")
    cart_p, stats_p = construct_with_stats(m, order, use_index=use_index, kernel="python")
    assert stats_c.kernel == "compiled"
    assert stats_p.kernel == "python"
    assert np.array_equal(cart_c.x, cart_p.x)
    assert np.array_equal(cart_c.y, cart_p.y)
    assert np.array_equal(cart_c.dfs_num, cart_p.dfs_num)
    assert np.array_equal(cart_c.failed, cart_p.failed)
    assert stats_c.intersection_tests == stats_p.intersection_tests


@pytest.mark.parametrize("use_index", [True, False], ids=["indexed", "naive"])
def test_identity_order_matches(use_index):
    for m in corpus():
        assert_same_run(m, None, use_index)


@pytest.mark.parametrize("use_index", [True, False], ids=["indexed", "naive"])
def test_random_orders_match(use_index):
    rng = Xoshiro256(77)
    for m in corpus():
        for _ in range(3):
            assert_same_run(m, Permutation.random(len(m), rng), use_index)


def test_reverse_order_matches():
    for m in corpus():
        assert_same_run(m, Permutation.reverse(len(m)), True)
