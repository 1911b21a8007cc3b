"""Pure-numpy sweep kernel, the fallback when the compiled extension is absent.

Contract shared with the compiled kernel: for each row r of the uniform
matrix, select the sizes[r] smallest entries with ties broken by ascending
index (lexicographic (value, index) order), then report how many selected
positions are positive and the ascending-index sum of fn_values over the
positives left unselected.  Both kernels accumulate that sum strictly in
ascending index order so their float outputs are bit-identical.
"""

from __future__ import annotations

import numpy as np


def _validate(u, sizes, is_positive, fn_values):
    u = np.ascontiguousarray(u, dtype=np.float64)
    sizes = np.ascontiguousarray(sizes, dtype=np.int64)
    pos = np.ascontiguousarray(np.asarray(is_positive, dtype=bool))
    values = np.ascontiguousarray(fn_values, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError(f"u must be two-dimensional, got shape {u.shape}")
    n_rows, n = u.shape
    if n == 0:
        raise ValueError("u must have at least one column")
    if sizes.shape != (n_rows,):
        raise ValueError(f"sizes must have shape ({n_rows},), got {sizes.shape}")
    if pos.shape != (n,) or values.shape != (n,):
        raise ValueError(f"is_positive and fn_values must have shape ({n},)")
    if sizes.min(initial=0) < 0 or sizes.max(initial=0) > n:
        raise ValueError(f"sizes must lie in [0, {n}]")
    return u, sizes, pos, values


def outcome_sweep(
    u: np.ndarray,
    sizes: np.ndarray,
    is_positive: np.ndarray,
    fn_values: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Selected-positive counts and missed-positive value sums per row."""
    u, sizes, pos, values = _validate(u, sizes, is_positive, fn_values)
    n_rows, n = u.shape

    # threshold per row: the sizes[r]-th smallest value (rows selecting
    # nothing get -inf so no entry qualifies)
    sorted_u = np.sort(u, axis=1)
    safe_k = np.maximum(sizes, 1)
    thresholds = sorted_u[np.arange(n_rows), safe_k - 1]
    thresholds = np.where(sizes == 0, -np.inf, thresholds)

    below = u < thresholds[:, None]
    deficits = sizes - below.sum(axis=1)
    at_threshold = u == thresholds[:, None]
    fill = at_threshold & (np.cumsum(at_threshold, axis=1) <= deficits[:, None])
    chosen = below | fill

    tp = (chosen & pos[None, :]).sum(axis=1, dtype=np.int64)
    missed = ~chosen & pos[None, :]
    contributions = np.where(missed, values[None, :], 0.0)
    # ufunc accumulate runs strictly left to right, matching the compiled loop
    fn_value_sum = np.add.accumulate(contributions, axis=1)[:, -1]
    return tp, fn_value_sum
