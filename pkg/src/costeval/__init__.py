"""Cost-sensitive evaluation of binary classifiers.

The package covers four layers:

- confusion matrices, costed datasets, and example-dependent total cost
  (:mod:`costeval.core`, :mod:`costeval.costs`);
- the weighted-accuracy family and its cost/prevalence calibrations
  (:mod:`costeval.weighting`);
- a catalog of 24 evaluation metrics behind one dispatch interface
  (:mod:`costeval.metrics`), plus weight estimation from partial cost
  knowledge (:mod:`costeval.estimation`);
- a reproducible Monte-Carlo harness that measures how well each metric's
  ranking of classifiers agrees with total cost (:mod:`costeval.experiment`),
  with rank correlations from :mod:`costeval.ranking`.
"""

from __future__ import annotations

from ._kernel import ACTIVE_KERNEL, HAVE_COMPILED, available_kernels, resolve_kernel
from .core import (
    ClassificationOutcome,
    ConfusionMatrix,
    CostedDataset,
    Label,
    LabeledExample,
    confusion_from_outcome,
)
from .costs import (
    ChurnScenario,
    CostContext,
    CostMatrix,
    ShiftedCosts,
    TccDecomposition,
    churn_example_costs,
    churn_shifted_costs,
    decompose_tcc,
    shifted_costs,
    tcc_example_dependent,
    tcc_example_independent,
    tune_retention_cost,
)
from .estimation import (
    EmblematicModel,
    ModelKind,
    WeightInterval,
    constraints_from_ranking,
    emblematic_numerator,
    rank_emblematic,
    ranking_consistent,
    weight_from_ucc_ratio,
)
from .experiment import (
    DEFAULT_GRID,
    DEFAULT_SEED,
    ExperimentConfig,
    HeatmapResult,
    SyntheticRevenues,
    load_revenues,
    run_cell,
    run_heatmap,
    write_heatmap_outputs,
)
from .metrics import (
    KINDS,
    MetricDescriptor,
    MetricId,
    descriptor_for,
    evaluate,
    evaluate_counts,
    h_measure,
    metric_registry,
)
from .ranking import CorrelationScheme, correlate, rank_values, spearman, weighted_spearman
from .weighting import (
    AffineCheck,
    BetaParams,
    QuadratureConfig,
    TabulatedDensity,
    TargetProfile,
    UniformInterval,
    WeightSpec,
    accuracy_equivalence_rplus,
    balanced_weight,
    beta_from_moments,
    expected_weighted_accuracy,
    rescale_example_weights,
    rescale_weights_by_mask,
    target_weight,
    wa_tcc_affine,
    weight_from_costs,
    weighted_accuracy,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_KERNEL",
    "HAVE_COMPILED",
    "available_kernels",
    "resolve_kernel",
    "Label",
    "ConfusionMatrix",
    "LabeledExample",
    "CostedDataset",
    "ClassificationOutcome",
    "confusion_from_outcome",
    "CostMatrix",
    "ShiftedCosts",
    "CostContext",
    "TccDecomposition",
    "ChurnScenario",
    "shifted_costs",
    "tcc_example_independent",
    "tcc_example_dependent",
    "decompose_tcc",
    "churn_example_costs",
    "churn_shifted_costs",
    "tune_retention_cost",
    "WeightSpec",
    "TargetProfile",
    "BetaParams",
    "UniformInterval",
    "TabulatedDensity",
    "QuadratureConfig",
    "AffineCheck",
    "weighted_accuracy",
    "weight_from_costs",
    "wa_tcc_affine",
    "balanced_weight",
    "rescale_example_weights",
    "rescale_weights_by_mask",
    "target_weight",
    "accuracy_equivalence_rplus",
    "beta_from_moments",
    "expected_weighted_accuracy",
    "KINDS",
    "MetricId",
    "MetricDescriptor",
    "metric_registry",
    "descriptor_for",
    "evaluate",
    "evaluate_counts",
    "h_measure",
    "ModelKind",
    "EmblematicModel",
    "WeightInterval",
    "emblematic_numerator",
    "rank_emblematic",
    "constraints_from_ranking",
    "ranking_consistent",
    "weight_from_ucc_ratio",
    "CorrelationScheme",
    "rank_values",
    "spearman",
    "weighted_spearman",
    "correlate",
    "DEFAULT_SEED",
    "DEFAULT_GRID",
    "SyntheticRevenues",
    "ExperimentConfig",
    "HeatmapResult",
    "load_revenues",
    "run_cell",
    "run_heatmap",
    "write_heatmap_outputs",
]
