"""Ranking vectors and rank correlation between metric and cost orderings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.stats

# A rank vector assigns average ranks with 1 the best; ties share the mean of
# the ranks they occupy.
RankVector = np.ndarray


@dataclass(frozen=True)
class CorrelationScheme:
    """Selects the rank correlation: plain Spearman or the top-weighted variant.

    The weighted variant emphasizes agreement near the top of either ranking
    through per-item weights 1/(rank + n0 - 1); larger n0 flattens the
    emphasis and recovers plain Spearman in the limit.
    """

    kind: str = "standard"
    n0: float = 2.0

    def __post_init__(self) -> None:
        if self.kind not in ("standard", "weighted"):
            raise ValueError(f"kind must be 'standard' or 'weighted', got {self.kind!r}")
        if not (math.isfinite(self.n0) and self.n0 > 0):
            raise ValueError(f"n0 must be positive, got {self.n0!r}")


def rank_values(values: "np.ndarray | list[float]", higher_is_better: bool = True) -> RankVector:
    """Average ranks of values with rank 1 the best under the given orientation."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("values must be a non-empty one-dimensional array")
    if np.any(~np.isfinite(values)):
        raise ValueError("values must be finite; drop undefined entries before ranking")
    oriented = -values if higher_is_better else values
    return scipy.stats.rankdata(oriented, method="average")


def _as_rank_pair(r: RankVector, s: RankVector) -> tuple[np.ndarray, np.ndarray]:
    r = np.asarray(r, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    if r.shape != s.shape or r.ndim != 1:
        raise ValueError(f"rank vectors must share one dimension, got {r.shape} and {s.shape}")
    return r, s


def spearman(r: RankVector, s: RankVector) -> float | None:
    """Pearson correlation of two rank vectors; None when either is constant."""
    r, s = _as_rank_pair(r, s)
    if r.size < 2:
        return None
    dr = r - r.mean()
    ds = s - s.mean()
    denom = math.sqrt(float(dr @ dr) * float(ds @ ds))
    if denom == 0.0:
        return None
    return float(dr @ ds) / denom


def weighted_spearman(r: RankVector, s: RankVector, n0: float = 2.0) -> float | None:
    """Top-weighted rank correlation.

    Each item gets weight u_i = 1/(r_i + n0 - 1) + 1/(s_i + n0 - 1), so
    disagreements among top-ranked items cost more, and the result is the
    u-weighted Pearson correlation of the two rank vectors.  None when
    either vector is constant.
    """
    if not (math.isfinite(n0) and n0 > 0):
        raise ValueError(f"n0 must be positive, got {n0!r}")
    r, s = _as_rank_pair(r, s)
    if r.size < 2:
        return None
    u = 1.0 / (r + n0 - 1.0) + 1.0 / (s + n0 - 1.0)
    total = u.sum()
    dr = r - (u @ r) / total
    ds = s - (u @ s) / total
    var_r = float(u @ (dr * dr))
    var_s = float(u @ (ds * ds))
    denom = math.sqrt(var_r * var_s)
    if denom == 0.0:
        return None
    return float(u @ (dr * ds)) / denom


def correlate(r: RankVector, s: RankVector, scheme: CorrelationScheme) -> float | None:
    """Rank correlation under the chosen scheme."""
    if scheme.kind == "standard":
        return spearman(r, s)
    return weighted_spearman(r, s, scheme.n0)
