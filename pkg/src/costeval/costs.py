"""Cost matrices, total classification cost, and the churn cost model."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ClassificationOutcome, ConfusionMatrix, CostedDataset, Label, confusion_from_outcome


@dataclass(frozen=True)
class CostMatrix:
    """Unit classification costs for one example or one whole population.

    Coherence requires misclassification to cost strictly more than correct
    classification on each class: c_tp < c_fn and c_tn < c_fp.
    """

    c_tp: float
    c_fn: float
    c_fp: float
    c_tn: float

    def __post_init__(self) -> None:
        for name in ("c_tp", "c_fn", "c_fp", "c_tn"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.c_tp < self.c_fn:
            raise ValueError(f"incoherent costs: c_tp ({self.c_tp}) must be < c_fn ({self.c_fn})")
        if not self.c_tn < self.c_fp:
            raise ValueError(f"incoherent costs: c_tn ({self.c_tn}) must be < c_fp ({self.c_fp})")


@dataclass(frozen=True)
class ShiftedCosts:
    """Strictly positive extra costs of misclassification per class.

    c_fn is the extra cost of a false negative over a true positive,
    c_fp the extra cost of a false positive over a true negative.
    """

    c_fn: float
    c_fp: float

    def __post_init__(self) -> None:
        for name in ("c_fn", "c_fp"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def v(self) -> float:
        """Cost ratio C_FN / C_FP."""
        return self.c_fn / self.c_fp

    @property
    def r_c(self) -> float:
        """Cost share of false negatives, C_FN / (C_FN + C_FP); lies in (0, 1)."""
        return self.c_fn / (self.c_fn + self.c_fp)


@dataclass(frozen=True)
class CostContext:
    """Shifted costs plus the unavoidable baseline cost of perfect classification."""

    costs: ShiftedCosts
    tcc_min: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.tcc_min):
            raise ValueError("tcc_min must be finite")


def shifted_costs(matrix: CostMatrix) -> ShiftedCosts:
    """Reduce a full cost matrix to the per-class extra costs of misclassification."""
    return ShiftedCosts(c_fn=matrix.c_fn - matrix.c_tp, c_fp=matrix.c_fp - matrix.c_tn)


def tcc_example_independent(
    cm: ConfusionMatrix, costs: ShiftedCosts, tcc_min: float = 0.0
) -> float:
    """Total classification cost when every example shares the population costs.

    TCC = C_FN * FN + C_FP * FP + tcc_min.
    """
    if not math.isfinite(tcc_min):
        raise ValueError("tcc_min must be finite")
    return costs.c_fn * cm.fn + costs.c_fp * cm.fp + tcc_min


def tcc_example_dependent(dataset: CostedDataset, outcome: ClassificationOutcome) -> float:
    """Total classification cost summing each example's own unit costs.

    A positive example pays ucc_incorrect when it is not predicted positive;
    a negative example pays ucc_incorrect when it is predicted positive.
    """
    unknown = [i for i in outcome.predicted_positive if i not in dataset]
    if unknown:
        raise ValueError(f"outcome references unknown example ids: {sorted(unknown)[:5]}")
    total = 0.0
    for example in dataset.examples:
        predicted = example.id in outcome.predicted_positive
        wrong = (example.label is Label.POSITIVE) != predicted
        total += example.ucc_incorrect if wrong else example.ucc_correct
    return total


@dataclass(frozen=True)
class TccDecomposition:
    """Example-dependent TCC split into an average-cost part and fluctuations.

    total = mean_term + baseline + fluctuation, where mean_term uses the
    population shifted costs, baseline is the cost of perfect classification,
    and fluctuation collects each misclassified example's deviation from the
    population cost.  The identity is validated to 1e-9 relative.
    """

    mean_term: float
    baseline: float
    fluctuation: float
    total: float

    def __post_init__(self) -> None:
        recombined = self.mean_term + self.baseline + self.fluctuation
        if abs(self.total - recombined) > 1e-9 * max(1.0, abs(self.total)):
            raise ValueError(
                f"decomposition does not recombine: total={self.total!r} "
                f"vs mean+baseline+fluctuation={recombined!r}"
            )


def decompose_tcc(
    dataset: CostedDataset, outcome: ClassificationOutcome, costs: ShiftedCosts
) -> TccDecomposition:
    """Split example-dependent TCC around caller-supplied average shifted costs.

    Each false negative contributes its shifted cost's deviation from
    costs.c_fn to the fluctuation term, each false positive its deviation
    from costs.c_fp.  With per-class average costs the fluctuation sums to
    zero only when every misclassified example has exactly the average cost.
    """
    cm = confusion_from_outcome(dataset, outcome)
    baseline = sum(e.ucc_correct for e in dataset.examples)
    mean_term = costs.c_fn * cm.fn + costs.c_fp * cm.fp
    fluctuation = 0.0
    for example in dataset.examples:
        predicted = example.id in outcome.predicted_positive
        if example.label is Label.POSITIVE and not predicted:
            fluctuation += example.shifted_cost - costs.c_fn
        elif example.label is Label.NEGATIVE and predicted:
            fluctuation += example.shifted_cost - costs.c_fp
    total = tcc_example_dependent(dataset, outcome)
    return TccDecomposition(
        mean_term=mean_term, baseline=baseline, fluctuation=fluctuation, total=total
    )


@dataclass(frozen=True)
class ChurnScenario:
    """Customer churn cost model: retention offers against revenue loss.

    Every predicted churner receives a retention offer costing
    ``retention_cost``; a missed churner loses their revenue with
    probability ``p_eff`` (the offer's effectiveness).  The offer must cost
    less than the average expected loss, retention_cost < r_avg * p_eff,
    for retention to be worthwhile on average.
    """

    retention_cost: float
    p_eff: float
    revenues: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "revenues", tuple(float(r) for r in self.revenues))
        if not self.revenues:
            raise ValueError("scenario needs at least one revenue")
        if any(not (math.isfinite(r) and r > 0) for r in self.revenues):
            raise ValueError("revenues must be positive and finite")
        if not (0 < self.p_eff <= 1):
            raise ValueError(f"p_eff must lie in (0, 1], got {self.p_eff!r}")
        if not (math.isfinite(self.retention_cost) and self.retention_cost > 0):
            raise ValueError(f"retention_cost must be positive, got {self.retention_cost!r}")
        if not self.retention_cost < self.r_avg * self.p_eff:
            raise ValueError(
                f"infeasible scenario: retention_cost ({self.retention_cost}) must be below "
                f"average expected loss r_avg * p_eff ({self.r_avg * self.p_eff})"
            )

    @property
    def r_avg(self) -> float:
        return sum(self.revenues) / len(self.revenues)


def churn_example_costs(revenue: float, scenario: ChurnScenario) -> CostMatrix:
    """Per-example unit costs under the churn model.

    A churner costs revenue * p_eff when missed and the retention offer when
    caught; a loyal customer costs the offer when falsely flagged and nothing
    otherwise.  The example must satisfy revenue * p_eff > retention_cost or
    its costs would be incoherent.
    """
    if not (math.isfinite(revenue) and revenue > 0):
        raise ValueError(f"revenue must be positive, got {revenue!r}")
    return CostMatrix(
        c_tp=scenario.retention_cost,
        c_fn=revenue * scenario.p_eff,
        c_fp=scenario.retention_cost,
        c_tn=0.0,
    )


def churn_shifted_costs(scenario: ChurnScenario) -> ShiftedCosts:
    """Population-average shifted costs of the churn model.

    C_FP = retention_cost; C_FN = r_avg * p_eff - retention_cost.
    """
    return ShiftedCosts(
        c_fn=scenario.r_avg * scenario.p_eff - scenario.retention_cost,
        c_fp=scenario.retention_cost,
    )


def tune_retention_cost(r_c: float, p_eff: float, r_avg: float) -> float:
    """Retention cost that makes the churn model's cost share equal r_c.

    Solving r_c = C_FN / (C_FN + C_FP) with C_FP = M and
    C_FN = r_avg * p_eff - M gives M = p_eff * r_avg * (1 - r_c).
    """
    if not 0 < r_c < 1:
        raise ValueError(f"r_c must lie in (0, 1), got {r_c!r}")
    if not 0 < p_eff <= 1:
        raise ValueError(f"p_eff must lie in (0, 1], got {p_eff!r}")
    if not (math.isfinite(r_avg) and r_avg > 0):
        raise ValueError(f"r_avg must be positive, got {r_avg!r}")
    return p_eff * r_avg * (1.0 - r_c)
