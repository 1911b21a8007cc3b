# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sweep kernel.

Same contract as the numpy fallback: per row, select the sizes[r] smallest
uniforms with ties broken by ascending index, count selected positives, and
sum fn_values over missed positives in ascending index order.  The ascending
summation order keeps float results bit-identical to the fallback.
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

cnp.import_array()


cdef double _kth_smallest(double* buf, Py_ssize_t length, Py_ssize_t k) noexcept nogil:
    """Quickselect for the k-th smallest (0-based) element; permutes buf."""
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = length - 1
    cdef Py_ssize_t i, j
    cdef double pivot, tmp
    while lo < hi:
        pivot = buf[lo + (hi - lo) // 2]
        i = lo
        j = hi
        while i <= j:
            while buf[i] < pivot:
                i += 1
            while buf[j] > pivot:
                j -= 1
            if i <= j:
                tmp = buf[i]
                buf[i] = buf[j]
                buf[j] = tmp
                i += 1
                j -= 1
        if k <= j:
            hi = j
        elif k >= i:
            lo = i
        else:
            return buf[k]
    return buf[lo]


def outcome_sweep(u_in, sizes_in, is_positive_in, fn_values_in):
    """Selected-positive counts and missed-positive value sums per row."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] u = np.ascontiguousarray(
        u_in, dtype=np.float64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] sizes = np.ascontiguousarray(
        sizes_in, dtype=np.int64
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] pos = np.ascontiguousarray(
        np.asarray(is_positive_in, dtype=bool), dtype=np.uint8
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] values = np.ascontiguousarray(
        fn_values_in, dtype=np.float64
    )

    cdef Py_ssize_t n_rows = u.shape[0]
    cdef Py_ssize_t n = u.shape[1]
    if n == 0:
        raise ValueError("u must have at least one column")
    if sizes.shape[0] != n_rows:
        raise ValueError(f"sizes must have shape ({n_rows},)")
    if pos.shape[0] != n or values.shape[0] != n:
        raise ValueError(f"is_positive and fn_values must have shape ({n},)")

    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] tp = np.zeros(n_rows, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] fn_sum = np.zeros(n_rows, dtype=np.float64)

    cdef double* scratch = <double*> malloc(n * sizeof(double))
    if scratch == NULL:
        raise MemoryError()

    cdef Py_ssize_t r, i, k, below, deficit, count
    cdef double threshold, total, ui
    cdef bint chosen
    try:
        for r in range(n_rows):
            k = sizes[r]
            if k < 0 or k > n:
                raise ValueError(f"sizes must lie in [0, {n}], got {k}")
            count = 0
            total = 0.0
            if k == 0:
                for i in range(n):
                    if pos[i]:
                        total += values[i]
            elif k == n:
                for i in range(n):
                    if pos[i]:
                        count += 1
            else:
                memcpy(scratch, &u[r, 0], n * sizeof(double))
                threshold = _kth_smallest(scratch, n, k - 1)
                below = 0
                for i in range(n):
                    if u[r, i] < threshold:
                        below += 1
                deficit = k - below
                for i in range(n):
                    ui = u[r, i]
                    if ui < threshold:
                        chosen = True
                    elif ui == threshold and deficit > 0:
                        chosen = True
                        deficit -= 1
                    else:
                        chosen = False
                    if pos[i]:
                        if chosen:
                            count += 1
                        else:
                            total += values[i]
            tp[r] = count
            fn_sum[r] = total
    finally:
        free(scratch)
    return np.asarray(tp), np.asarray(fn_sum)
