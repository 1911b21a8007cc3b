"""Tests for the outcome-sweep kernel contract and the two implementations."""

from __future__ import annotations

import numpy as np
import pytest

from costeval._kernel import (
    HAVE_COMPILED,
    available_kernels,
    resolve_kernel,
)
from costeval._kernel.fallback import outcome_sweep as numpy_sweep

needs_compiled = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")


def brute_force(u, sizes, is_positive, fn_values):
    """Reference implementation straight off the contract.

    Per row: select the sizes[r] smallest entries under (value, index)
    lexicographic order, count selected positives, and sum fn_values over
    unselected positives in ascending index order.
    """
    u = np.asarray(u, dtype=np.float64)
    n_rows, n = u.shape
    tp = np.zeros(n_rows, dtype=np.int64)
    fn_sum = np.zeros(n_rows, dtype=np.float64)
    for r in range(n_rows):
        order = sorted(range(n), key=lambda j: (u[r, j], j))
        chosen = set(order[: sizes[r]])
        tp[r] = sum(1 for j in chosen if is_positive[j])
        acc = 0.0
        for j in range(n):
            if is_positive[j] and j not in chosen:
                acc += fn_values[j]
        fn_sum[r] = acc
    return tp, fn_sum


def random_case(rng, n_rows, n, tie_heavy=False):
    u = rng.random((n_rows, n))
    if tie_heavy:
        u = np.round(u, 1)
    sizes = rng.integers(0, n + 1, size=n_rows)
    is_positive = rng.random(n) < 0.4
    fn_values = rng.normal(scale=100.0, size=n)
    return u, sizes, is_positive, fn_values


class TestContract:
    def test_hand_case_with_value_tie(self):
        u = np.array([[0.5, 0.2, 0.9, 0.2]])
        sizes = np.array([2])
        is_positive = np.array([True, True, False, True])
        fn_values = np.array([1.0, 2.0, 4.0, 8.0])
        tp, fn_sum = numpy_sweep(u, sizes, is_positive, fn_values)
        # the two 0.2 entries win; both are positive
        assert tp.tolist() == [2]
        # only index 0 is a missed positive
        assert fn_sum.tolist() == [1.0]

    def test_threshold_tie_filled_by_ascending_index(self):
        u = np.array([[0.3, 0.1, 0.3, 0.3]])
        sizes = np.array([2])
        is_positive = np.array([True, False, True, True])
        fn_values = np.array([10.0, 20.0, 40.0, 80.0])
        tp, fn_sum = numpy_sweep(u, sizes, is_positive, fn_values)
        # 0.1 enters, then the deficit of one is filled by the first 0.3 (index 0)
        assert tp.tolist() == [1]
        assert fn_sum.tolist() == [120.0]

    def test_empty_and_full_selections(self):
        u = np.array([[0.4, 0.6, 0.1], [0.4, 0.6, 0.1]])
        sizes = np.array([0, 3])
        is_positive = np.array([True, False, True])
        fn_values = np.array([2.0, 3.0, 5.0])
        tp, fn_sum = numpy_sweep(u, sizes, is_positive, fn_values)
        assert tp.tolist() == [0, 2]
        assert fn_sum.tolist() == [7.0, 0.0]

    def test_accumulation_order_is_ascending_index(self):
        # with these magnitudes the sum depends on accumulation order;
        # ascending-index accumulation gives exactly 1.0
        u = np.array([[0.9, 0.9, 0.9, 0.9]])
        sizes = np.array([0])
        is_positive = np.array([True, True, True, True])
        fn_values = np.array([1e16, 1.0, -1e16, 1.0])
        _, fn_sum = numpy_sweep(u, sizes, is_positive, fn_values)
        assert fn_sum[0] == 1.0

    def test_matches_brute_force(self):
        rng = np.random.default_rng(101)
        for trial in range(30):
            case = random_case(rng, n_rows=8, n=25, tie_heavy=trial % 2 == 0)
            tp, fn_sum = numpy_sweep(*case)
            tp_ref, fn_ref = brute_force(*case)
            np.testing.assert_array_equal(tp, tp_ref)
            np.testing.assert_array_equal(fn_sum, fn_ref)


class TestValidation:
    def test_shape_errors(self):
        u = np.zeros((2, 3))
        good_sizes = np.array([1, 1])
        good_pos = np.array([True, False, True])
        good_vals = np.zeros(3)
        with pytest.raises(ValueError, match="two-dimensional"):
            numpy_sweep(np.zeros(3), good_sizes, good_pos, good_vals)
        with pytest.raises(ValueError, match="sizes"):
            numpy_sweep(u, np.array([1]), good_pos, good_vals)
        with pytest.raises(ValueError, match="is_positive and fn_values"):
            numpy_sweep(u, good_sizes, np.array([True, False]), good_vals)
        with pytest.raises(ValueError, match="at least one column"):
            numpy_sweep(np.zeros((2, 0)), good_sizes, good_pos[:0], good_vals[:0])

    def test_sizes_range(self):
        u = np.zeros((1, 3))
        pos = np.array([True, False, True])
        vals = np.zeros(3)
        with pytest.raises(ValueError, match=r"sizes must lie in \[0, 3\]"):
            numpy_sweep(u, np.array([4]), pos, vals)
        with pytest.raises(ValueError, match=r"sizes must lie in \[0, 3\]"):
            numpy_sweep(u, np.array([-1]), pos, vals)


@needs_compiled
class TestCompiledKernel:
    def test_bit_identical_to_fallback(self):
        compiled = available_kernels()["cython"]
        rng = np.random.default_rng(202)
        for trial in range(50):
            case = random_case(rng, n_rows=12, n=60, tie_heavy=trial % 3 == 0)
            tp_a, fn_a = numpy_sweep(*case)
            tp_b, fn_b = compiled(*case)
            np.testing.assert_array_equal(tp_a, tp_b)
            # exact float equality, not allclose: the contract pins the
            # accumulation order so the bits must match
            np.testing.assert_array_equal(fn_a, fn_b)

    def test_bit_identical_on_edge_sizes(self):
        compiled = available_kernels()["cython"]
        rng = np.random.default_rng(203)
        u = np.round(rng.random((5, 10)), 1)
        sizes = np.array([0, 1, 5, 9, 10])
        is_positive = rng.random(10) < 0.5
        fn_values = rng.normal(size=10)
        a = numpy_sweep(u, sizes, is_positive, fn_values)
        b = compiled(u, sizes, is_positive, fn_values)
        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_array_equal(a[1], b[1])

    def test_compiled_validates_too(self):
        compiled = available_kernels()["cython"]
        with pytest.raises(ValueError):
            compiled(np.zeros((1, 3)), np.array([9]), np.zeros(3, dtype=bool), np.zeros(3))


class TestSelection:
    def test_numpy_always_available(self):
        kernels = available_kernels()
        assert "numpy" in kernels
        assert kernels["numpy"] is numpy_sweep

    def test_resolve_auto(self):
        name, fn = resolve_kernel("auto")
        assert name == ("cython" if HAVE_COMPILED else "numpy")
        assert callable(fn)

    def test_resolve_explicit(self):
        name, fn = resolve_kernel("numpy")
        assert name == "numpy"

    def test_resolve_unknown(self):
        with pytest.raises(ValueError, match="not available"):
            resolve_kernel("fortran")
