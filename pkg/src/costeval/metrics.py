"""Confusion-matrix metrics: catalog, evaluation, and undefined-value handling.

Every metric is evaluated from exact integer counts promoted to float.  When
a metric's denominator vanishes the scalar API returns None and the count
API returns NaN; callers are expected to drop such values, never to treat
them as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConfusionMatrix
from .costs import CostContext, ShiftedCosts
from .weighting import (
    DEFAULT_QUADRATURE,
    BetaParams,
    QuadratureConfig,
    WeightDistribution,
    beta_pdf,
    expected_weighted_accuracy,
    integrate_unit_interval,
)

KINDS = (
    "accuracy",
    "recall",
    "precision",
    "specificity",
    "npv",
    "f_beta",
    "informedness",
    "markedness",
    "mcc",
    "kappa",
    "g_mean",
    "roc_auc_single",
    "cba",
    "iam",
    "p4",
    "b_roc_single",
    "wca",
    "wra",
    "acd",
    "c_score",
    "msu",
    "h_measure",
    "wa",
    "ewa",
)

_LOWER_IS_BETTER = frozenset({"acd", "c_score"})
_NEEDS_COSTS = frozenset({"wca", "wra", "acd", "c_score", "msu", "h_measure", "wa"})
_NEEDS_DISTRIBUTION = frozenset({"ewa"})
# closed-form metrics evaluable directly from count arrays (everything but the
# two integral-valued ones)
_COUNT_KINDS = tuple(k for k in KINDS if k not in ("h_measure", "ewa"))


@dataclass(frozen=True)
class MetricId:
    """Identifies a metric, including parameters for the parametric families.

    ``beta`` is only read by f_beta.  ``weight`` fixes WA's weight; leaving
    it None derives w = r_C from the cost context at evaluation time.
    """

    kind: str
    beta: float = 1.0
    weight: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be positive, got {self.beta!r}")
        if self.weight is not None and not (0.0 <= self.weight <= 1.0):
            raise ValueError(f"weight must lie in [0, 1], got {self.weight!r}")


@dataclass(frozen=True)
class MetricDescriptor:
    """Registry entry: orientation and required evaluation context."""

    kind: str
    higher_is_better: bool
    needs_costs: bool
    needs_distribution: bool


_REGISTRY = tuple(
    MetricDescriptor(
        kind=kind,
        higher_is_better=kind not in _LOWER_IS_BETTER,
        needs_costs=kind in _NEEDS_COSTS,
        needs_distribution=kind in _NEEDS_DISTRIBUTION,
    )
    for kind in KINDS
)
_BY_KIND = {d.kind: d for d in _REGISTRY}


def metric_registry() -> tuple[MetricDescriptor, ...]:
    """All supported metrics in catalog order."""
    return _REGISTRY


def descriptor_for(kind: str) -> MetricDescriptor:
    try:
        return _BY_KIND[kind]
    except KeyError:
        raise ValueError(f"unknown metric kind {kind!r}") from None


def _safe_div(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Elementwise num / den with NaN wherever den == 0."""
    num = np.asarray(num, dtype=np.float64)
    den = np.asarray(den, dtype=np.float64)
    out = np.full(np.broadcast_shapes(num.shape, den.shape), np.nan)
    np.divide(num, den, out=out, where=(den != 0))
    return out


def evaluate_counts(
    kind: str,
    tp: "np.ndarray | float",
    fn: "np.ndarray | float",
    fp: "np.ndarray | float",
    tn: "np.ndarray | float",
    *,
    c_fn: float | None = None,
    c_fp: float | None = None,
    tcc_min: float = 0.0,
    beta: float = 1.0,
    weight: float | None = None,
) -> np.ndarray:
    """Vectorized evaluation of a closed-form metric over count arrays.

    Returns a float64 array with NaN marking undefined entries.  Cost-based
    kinds require c_fn and c_fp.  The integral-valued kinds (h_measure, ewa)
    are not count-vectorizable here; evaluate() handles them.
    """
    if kind not in _COUNT_KINDS:
        raise ValueError(f"metric {kind!r} cannot be evaluated from counts alone")
    costs_needed = descriptor_for(kind).needs_costs and not (kind == "wa" and weight is not None)
    if costs_needed:
        if c_fn is None or c_fp is None:
            raise ValueError(f"metric {kind!r} requires shifted costs")
        if not (c_fn > 0 and c_fp > 0):
            raise ValueError("shifted costs must be positive")
    tp = np.asarray(tp, dtype=np.float64)
    fn = np.asarray(fn, dtype=np.float64)
    fp = np.asarray(fp, dtype=np.float64)
    tn = np.asarray(tn, dtype=np.float64)
    p = tp + fn
    n = tn + fp
    with np.errstate(invalid="ignore", divide="ignore"):
        if kind == "accuracy":
            return _safe_div(tp + tn, p + n)
        if kind == "recall":
            return _safe_div(tp, p)
        if kind == "precision":
            return _safe_div(tp, tp + fp)
        if kind == "specificity":
            return _safe_div(tn, n)
        if kind == "npv":
            return _safe_div(tn, tn + fn)
        if kind == "f_beta":
            b2 = beta * beta
            return _safe_div((1.0 + b2) * tp, tp + b2 * p + fp)
        if kind == "informedness":
            return _safe_div(tp, p) - _safe_div(fp, n)
        if kind == "markedness":
            return _safe_div(tp, tp + fp) - _safe_div(fn, tn + fn)
        if kind == "mcc":
            return _safe_div(tp * tn - fp * fn, np.sqrt((tp + fp) * p * n * (tn + fn)))
        if kind == "kappa":
            return _safe_div(2.0 * (tp * tn - fn * fp), (tp + fp) * n + p * (fn + tn))
        if kind == "g_mean":
            return np.sqrt(_safe_div(tp * tn, p * n))
        if kind == "roc_auc_single":
            return (_safe_div(tp, p) + _safe_div(tn, n)) / 2.0
        if kind == "cba":
            return (_safe_div(tp, np.maximum(p, tp + fp)) + _safe_div(tn, np.maximum(n, tn + fn))) / 2.0
        if kind == "iam":
            worst = np.maximum(fp, fn)
            return _safe_div(tp - worst, 2.0 * np.maximum(p, tp + fp)) + _safe_div(
                tn - worst, 2.0 * np.maximum(n, tn + fn)
            )
        if kind == "p4":
            return _safe_div(4.0 * tp * tn, 4.0 * tp * tn + (tp + tn) * (fp + fn))
        if kind == "b_roc_single":
            return (_safe_div(tp, p) + _safe_div(tp, fp + tp)) / 2.0
        if kind == "wca":
            r_c = c_fn / (c_fn + c_fp)
            return r_c * _safe_div(tp, p) + (1.0 - r_c) * _safe_div(tn, n)
        if kind == "wra":
            g = _safe_div(np.asarray(n * c_fp), np.asarray(p * c_fn))
            informedness = _safe_div(tp, p) - _safe_div(fp, n)
            return 4.0 * informedness * g / (1.0 + g) ** 2
        if kind == "acd":
            acc = _safe_div(tp + tn, p + n)
            cost_term = _safe_div(c_fn * fn + c_fp * fp, c_fn * p + c_fp * n)
            return np.sqrt((1.0 - acc) ** 2 + cost_term**2)
        if kind == "c_score":
            return _safe_div(c_fn * fn + c_fp * fp + tcc_min, p * c_fp)
        if kind == "msu":
            return 1.0 - _safe_div(c_fn * fn + c_fp * fp, c_fn * p + c_fp * n)
        if kind == "wa":
            if weight is None:
                weight = c_fn / (c_fn + c_fp)
            elif not 0.0 <= weight <= 1.0:
                raise ValueError(f"weight must lie in [0, 1], got {weight!r}")
            return _safe_div(weight * tp + (1.0 - weight) * tn, weight * p + (1.0 - weight) * n)
    raise AssertionError(f"unhandled metric kind {kind!r}")


def h_measure(
    cm: ConfusionMatrix,
    costs: ShiftedCosts,
    dist: BetaParams | None = None,
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """H = 1 - E_u[TCC(c)] / E_u[TCC_max(c)] under a Beta prior on the cost share c.

    TCC(c) = b * (c * FP + (1 - c) * FN) and TCC_max(c) = b * (c * N + (1 - c) * P)
    with b = C_FP + C_FN and c = C_FP / (C_FP + C_FN).  Defaults to the
    uninformed Beta(2, 2) prior.
    """
    if cm.total == 0:
        raise ValueError("cannot evaluate metrics on an empty confusion matrix")
    if dist is None:
        dist = BetaParams(2.0, 2.0)
    b = costs.c_fn + costs.c_fp
    fn, fp = float(cm.fn), float(cm.fp)
    p, n = float(cm.p), float(cm.n)
    num = integrate_unit_interval(
        lambda c: beta_pdf(c, dist) * b * (c * fp + (1.0 - c) * fn), quadrature
    )
    den = integrate_unit_interval(
        lambda c: beta_pdf(c, dist) * b * (c * n + (1.0 - c) * p), quadrature
    )
    return 1.0 - num / den


def h_measure_from_mean(
    fn: "np.ndarray | float",
    fp: "np.ndarray | float",
    p: float,
    n: float,
    mean_c: float,
) -> np.ndarray:
    """H evaluated exactly from the prior's mean.

    Both H integrands are linear in c, so the integrals reduce to the
    integrand at E[c]: H = 1 - (FP * mu + FN * (1 - mu)) / (N * mu + P * (1 - mu)).
    The b factor cancels between numerator and denominator.
    """
    if not 0.0 < mean_c < 1.0:
        raise ValueError(f"mean_c must lie in (0, 1), got {mean_c!r}")
    fn = np.asarray(fn, dtype=np.float64)
    fp = np.asarray(fp, dtype=np.float64)
    den = n * mean_c + p * (1.0 - mean_c)
    return 1.0 - _safe_div(fp * mean_c + fn * (1.0 - mean_c), np.asarray(den))


def evaluate(
    metric: MetricId | str,
    cm: ConfusionMatrix,
    cost_ctx: CostContext | None = None,
    dist_ctx: WeightDistribution | None = None,
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float | None:
    """Evaluate one metric on a confusion matrix.

    Returns None when the metric is undefined on this matrix (a vanishing
    denominator).  Raises when required context is missing: cost-based
    metrics need cost_ctx, ewa needs dist_ctx, and wa needs either a fixed
    weight or cost_ctx to derive one.
    """
    if isinstance(metric, str):
        metric = MetricId(metric)
    if cm.total == 0:
        raise ValueError("cannot evaluate metrics on an empty confusion matrix")
    descriptor = descriptor_for(metric.kind)
    if descriptor.needs_costs and cost_ctx is None and not (
        metric.kind == "wa" and metric.weight is not None
    ):
        raise ValueError(f"metric {metric.kind!r} requires a cost context")
    if metric.kind == "h_measure":
        dist = dist_ctx if dist_ctx is not None else BetaParams(2.0, 2.0)
        if not isinstance(dist, BetaParams):
            raise ValueError("h_measure takes a Beta prior over the cost share")
        return h_measure(cm, cost_ctx.costs, dist, quadrature)
    if metric.kind == "ewa":
        if dist_ctx is None:
            raise ValueError("ewa requires a weight distribution")
        return expected_weighted_accuracy(cm, dist_ctx, quadrature)
    value = evaluate_counts(
        metric.kind,
        cm.tp,
        cm.fn,
        cm.fp,
        cm.tn,
        c_fn=cost_ctx.costs.c_fn if cost_ctx else None,
        c_fp=cost_ctx.costs.c_fp if cost_ctx else None,
        tcc_min=cost_ctx.tcc_min if cost_ctx else 0.0,
        beta=metric.beta,
        weight=metric.weight,
    )
    scalar = float(value)
    return None if math.isnan(scalar) else scalar
