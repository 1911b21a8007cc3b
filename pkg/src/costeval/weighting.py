"""Weighted accuracy, weight derivations, and expectation over weight distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
import scipy.integrate
import scipy.stats

from .core import ConfusionMatrix, CostedDataset, Label
from .costs import ShiftedCosts


@dataclass(frozen=True)
class WeightSpec:
    """A sample-importance weight w in [0, 1]: w weights positives, 1 - w negatives."""

    w: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.w) and 0.0 <= self.w <= 1.0):
            raise ValueError(f"weight must lie in [0, 1], got {self.w!r}")


@dataclass(frozen=True)
class TargetProfile:
    """Deployment vs. development class balance.

    r_plus_dev is the positive ratio of the dataset the classifier was
    evaluated on; r_plus_target the ratio expected in deployment.
    """

    r_plus_dev: float
    r_plus_target: float

    def __post_init__(self) -> None:
        for name in ("r_plus_dev", "r_plus_target"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly inside (0, 1), got {value!r}")


@dataclass(frozen=True)
class BetaParams:
    """Parameters of a Beta distribution on (0, 1)."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value!r}")

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    def mirrored(self) -> "BetaParams":
        """The distribution of 1 - X when X follows this Beta law."""
        return BetaParams(alpha=self.beta, beta=self.alpha)


@dataclass(frozen=True)
class UniformInterval:
    """A uniform density on [lo, hi] within the unit interval."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lo < self.hi <= 1.0):
            raise ValueError(f"need 0 <= lo < hi <= 1, got [{self.lo!r}, {self.hi!r}]")


@dataclass(frozen=True)
class TabulatedDensity:
    """A piecewise-linear density on [0, 1] given by (node, value) pairs.

    Nodes must be strictly increasing, start at 0, end at 1, and values must
    be non-negative with positive total mass.  The density is normalized
    internally.
    """

    nodes: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        nodes = tuple(float(x) for x in self.nodes)
        values = tuple(float(u) for u in self.values)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        if len(nodes) != len(values) or len(nodes) < 2:
            raise ValueError("need matching nodes/values with at least two points")
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise ValueError("nodes must span [0, 1]")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise ValueError("nodes must be strictly increasing")
        if any(u < 0 for u in values):
            raise ValueError("density values must be non-negative")
        if float(np.trapezoid(values, nodes)) <= 0.0:
            raise ValueError("density must have positive mass")


WeightDistribution = Union[BetaParams, UniformInterval, TabulatedDensity]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for the adaptive quadrature used by integral-valued metrics."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    limit: int = 200

    def __post_init__(self) -> None:
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.limit < 1:
            raise ValueError("tolerances must be positive and limit at least 1")


DEFAULT_QUADRATURE = QuadratureConfig()


def _weight_value(w: float | WeightSpec) -> float:
    if isinstance(w, WeightSpec):
        return w.w
    return WeightSpec(float(w)).w


def weighted_accuracy(cm: ConfusionMatrix, w: float | WeightSpec) -> float | None:
    """Weighted accuracy WA = (w*TP + (1-w)*TN) / (w*P + (1-w)*N).

    Returns None when the denominator vanishes (the weight puts all mass on
    an empty class).
    """
    if cm.total == 0:
        raise ValueError("cannot evaluate metrics on an empty confusion matrix")
    weight = _weight_value(w)
    denom = weight * cm.p + (1.0 - weight) * cm.n
    if denom == 0.0:
        return None
    return (weight * cm.tp + (1.0 - weight) * cm.tn) / denom


def weight_from_costs(costs: ShiftedCosts) -> WeightSpec:
    """The weight that aligns WA with total classification cost: w = r_C."""
    return WeightSpec(costs.r_c)


@dataclass(frozen=True)
class AffineCheck:
    """WA evaluated at w = r_C together with the cost quantities it rescales."""

    wa: float
    tcc: float
    tcc_min: float
    tcc_max: float


def wa_tcc_affine(cm: ConfusionMatrix, costs: ShiftedCosts) -> AffineCheck:
    """Evaluate WA at w = r_C alongside TCC so that WA = 1 - (TCC - TCC_min) / (TCC_max - TCC_min).

    Shifted costs carry no baseline, so tcc_min is 0 and
    tcc_max = C_FN * P + C_FP * N.
    """
    if cm.total == 0:
        raise ValueError("cannot evaluate metrics on an empty confusion matrix")
    wa = weighted_accuracy(cm, costs.r_c)
    if wa is None:
        raise ValueError("weighted accuracy undefined: dataset has no examples on either class")
    tcc = costs.c_fn * cm.fn + costs.c_fp * cm.fp
    tcc_max = costs.c_fn * cm.p + costs.c_fp * cm.n
    return AffineCheck(wa=wa, tcc=tcc, tcc_min=0.0, tcc_max=tcc_max)


def balanced_weight(costs: ShiftedCosts, p: int, n: int) -> WeightSpec:
    """Weight that removes the class-size bias from WA at cost share r_C.

    w_bal = r_C * N / (r_C * N + (1 - r_C) * P); requires both classes
    non-empty.
    """
    if p <= 0 or n <= 0:
        raise ValueError(f"both classes must be non-empty, got P={p}, N={n}")
    r_c = costs.r_c
    return WeightSpec(r_c * n / (r_c * n + (1.0 - r_c) * p))


def rescale_weights_by_mask(
    positive: "np.ndarray | list[bool]",
    base_weights: "np.ndarray | list[float]",
    r_plus_target: float,
) -> np.ndarray:
    """Rescale per-example weights to a target positive ratio, normalized to sum 1.

    Positive examples are scaled by r_plus_target / P, negatives by
    (1 - r_plus_target) / N, then the whole vector is renormalized.
    """
    positive = np.asarray(positive, dtype=bool)
    weights = np.asarray(base_weights, dtype=np.float64)
    if positive.ndim != 1 or weights.shape != positive.shape:
        raise ValueError(
            f"base_weights must align with the labels: expected shape {positive.shape}, "
            f"got shape {weights.shape}"
        )
    if np.any(~np.isfinite(weights)) or np.any(weights < 0):
        raise ValueError("base weights must be finite and non-negative")
    if not 0.0 <= r_plus_target <= 1.0:
        raise ValueError(f"r_plus_target must lie in [0, 1], got {r_plus_target!r}")
    p = int(positive.sum())
    n = positive.size - p
    if p == 0 or n == 0:
        raise ValueError(f"both classes must be non-empty, got P={p}, N={n}")
    scaled = np.where(positive, weights * (r_plus_target / p), weights * ((1.0 - r_plus_target) / n))
    mass = scaled.sum()
    if mass <= 0.0:
        raise ValueError("rescaled weights have zero total mass")
    return scaled / mass


def rescale_example_weights(
    dataset: CostedDataset,
    base_weights: "np.ndarray | list[float]",
    r_plus_target: float,
) -> np.ndarray:
    """Rescale a costed dataset's per-example weights; see rescale_weights_by_mask."""
    positive = np.array([e.label is Label.POSITIVE for e in dataset.examples], dtype=bool)
    return rescale_weights_by_mask(positive, base_weights, r_plus_target)


def target_weight(costs: ShiftedCosts, profile: TargetProfile) -> WeightSpec:
    """WA weight that anticipates a deployment class balance different from development.

    w_t = (r_C * r_t / r_d) / (r_C * r_t / r_d + (1 - r_C) * (1 - r_t) / (1 - r_d))
    with r_d the development and r_t the target positive ratio.
    """
    r_c = costs.r_c
    r_d = profile.r_plus_dev
    r_t = profile.r_plus_target
    pos_term = r_c * r_t / r_d
    neg_term = (1.0 - r_c) * (1.0 - r_t) / (1.0 - r_d)
    return WeightSpec(pos_term / (pos_term + neg_term))


def accuracy_equivalence_rplus(r_c: float, r_plus_target: float) -> float:
    """Development positive ratio at which plain accuracy matches the target-weighted WA.

    Solves w_t = 1/2 for r_plus_dev:
    r_+ = r_C * r_t / ((1 - r_t) * (1 - r_C) + r_C * r_t).
    """
    if not 0.0 < r_c < 1.0:
        raise ValueError(f"r_c must lie in (0, 1), got {r_c!r}")
    if not 0.0 < r_plus_target < 1.0:
        raise ValueError(f"r_plus_target must lie in (0, 1), got {r_plus_target!r}")
    denom = 1.0 - r_plus_target - r_c + 2.0 * r_c * r_plus_target
    if denom <= 0.0:
        # algebraically unreachable for interior inputs; kept as a guard
        raise ValueError("no development ratio solves the equivalence condition")
    return r_c * r_plus_target / denom


def beta_pdf(x: "np.ndarray | float", params: BetaParams) -> "np.ndarray | float":
    """Density of the Beta(alpha, beta) distribution."""
    return scipy.stats.beta.pdf(x, params.alpha, params.beta)


def beta_from_moments(mean: float, variance: float) -> BetaParams:
    """Beta parameters matching a mean and variance.

    Requires 0 < mean < 1 and 0 < variance < mean * (1 - mean).
    """
    if not 0.0 < mean < 1.0:
        raise ValueError(f"mean must lie in (0, 1), got {mean!r}")
    bound = mean * (1.0 - mean)
    if not 0.0 < variance < bound:
        raise ValueError(
            f"variance must lie in (0, {bound}) for mean {mean}, got {variance!r}"
        )
    scale = bound / variance - 1.0
    return BetaParams(alpha=mean * scale, beta=(1.0 - mean) * scale)


def integrate_unit_interval(
    f: Callable[[float], float],
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
    lo: float = 0.0,
    hi: float = 1.0,
) -> float:
    """Adaptive quadrature of f over [lo, hi] at the configured tolerances."""
    value, _ = scipy.integrate.quad(
        f, lo, hi, epsabs=quadrature.abs_tol, epsrel=quadrature.rel_tol, limit=quadrature.limit
    )
    return value


def gauss_legendre_unit(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def _wa_curve(cm: ConfusionMatrix) -> Callable[[float], float]:
    tp, tn = float(cm.tp), float(cm.tn)
    p, n = float(cm.p), float(cm.n)
    if p <= 0 or n <= 0:
        raise ValueError(f"expected WA needs both classes non-empty, got P={cm.p}, N={cm.n}")

    def wa(w: float) -> float:
        return (w * tp + (1.0 - w) * tn) / (w * p + (1.0 - w) * n)

    return wa


def expected_weighted_accuracy(
    cm: ConfusionMatrix,
    dist: WeightDistribution,
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Expectation of WA(w) under a distribution over the weight.

    Supports Beta, uniform-interval, and tabulated piecewise-linear weight
    densities.  Both classes must be non-empty so WA is defined on all of
    [0, 1].
    """
    wa = _wa_curve(cm)
    if isinstance(dist, BetaParams):
        return integrate_unit_interval(
            lambda w: wa(w) * scipy.stats.beta.pdf(w, dist.alpha, dist.beta), quadrature
        )
    if isinstance(dist, UniformInterval):
        width = dist.hi - dist.lo
        return integrate_unit_interval(lambda w: wa(w) / width, quadrature, dist.lo, dist.hi)
    if isinstance(dist, TabulatedDensity):
        nodes = np.asarray(dist.nodes)
        values = np.asarray(dist.values)
        mass = float(np.trapezoid(values, nodes))
        total = 0.0
        for a, b, ua, ub in zip(nodes[:-1], nodes[1:], values[:-1], values[1:]):
            if ua == 0.0 and ub == 0.0:
                continue
            slope = (ub - ua) / (b - a)
            total += integrate_unit_interval(
                lambda w, a=a, ua=ua, slope=slope: wa(w) * (ua + slope * (w - a)) / mass,
                quadrature,
                float(a),
                float(b),
            )
        return total
    raise TypeError(f"unsupported weight distribution: {dist!r}")
