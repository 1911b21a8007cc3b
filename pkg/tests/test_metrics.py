"""Tests for the metric catalog: formulas, dispatch, and undefined-value policy."""

from __future__ import annotations

import math

import numpy as np
import pytest

from costeval.core import ConfusionMatrix
from costeval.costs import CostContext, ShiftedCosts
from costeval.metrics import (
    KINDS,
    MetricId,
    descriptor_for,
    evaluate,
    evaluate_counts,
    h_measure,
    h_measure_from_mean,
    metric_registry,
)
from costeval.weighting import BetaParams, UniformInterval

CM = ConfusionMatrix(tp=30, fn=20, fp=10, tn=40)
COSTS = ShiftedCosts(c_fn=2.0, c_fp=1.0)
COST_CTX = CostContext(costs=COSTS)

# hand-computed from the formulas on tp=30, fn=20, fp=10, tn=40 (P = N = 50)
HAND_VALUES = {
    "accuracy": 0.7,
    "recall": 0.6,
    "precision": 0.75,
    "specificity": 0.8,
    "npv": 40 / 60,
    "f_beta": 60 / 90,
    "informedness": 0.4,
    "markedness": 0.75 + 40 / 60 - 1.0,
    "mcc": 1000 / math.sqrt(40 * 50 * 50 * 60),
    "kappa": 0.4,
    "g_mean": math.sqrt(0.48),
    "roc_auc_single": 0.7,
    "cba": (30 / 50 + 40 / 60) / 2,
    "iam": (30 - 20) / (2 * 50) + (40 - 20) / (2 * 60),
    "p4": 4800 / (4800 + 70 * 30),
    "b_roc_single": (0.6 + 0.75) / 2,
    # cost-based, at C_FN = 2, C_FP = 1 (r_C = 2/3, TCC = 50, TCC_max = 150)
    "wca": (2 / 3) * 0.6 + (1 / 3) * 0.8,
    "wra": 4 * 0.4 * 0.5 / 1.5**2,
    "acd": math.sqrt(0.3**2 + (50 / 150) ** 2),
    "c_score": 1.0,
    "msu": 1.0 - 50 / 150,
    "wa": 1.0 - 50 / 150,
}


class TestRegistry:
    def test_all_kinds_registered_in_catalog_order(self):
        assert tuple(d.kind for d in metric_registry()) == KINDS
        assert len(KINDS) == 24

    def test_orientation(self):
        lower = {d.kind for d in metric_registry() if not d.higher_is_better}
        assert lower == {"acd", "c_score"}

    def test_context_requirements(self):
        needs_costs = {d.kind for d in metric_registry() if d.needs_costs}
        assert needs_costs == {"wca", "wra", "acd", "c_score", "msu", "h_measure", "wa"}
        needs_dist = {d.kind for d in metric_registry() if d.needs_distribution}
        assert needs_dist == {"ewa"}

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown metric"):
            descriptor_for("f1")
        with pytest.raises(ValueError, match="unknown metric"):
            MetricId("bogus")

    def test_metric_id_validation(self):
        with pytest.raises(ValueError, match="beta"):
            MetricId("f_beta", beta=0.0)
        with pytest.raises(ValueError, match="weight"):
            MetricId("wa", weight=1.5)


class TestHandValues:
    @pytest.mark.parametrize("kind,expected", sorted(HAND_VALUES.items()))
    def test_scalar_evaluation(self, kind, expected):
        value = evaluate(kind, CM, cost_ctx=COST_CTX)
        assert value == pytest.approx(expected, abs=1e-12)

    def test_f_beta_with_custom_beta(self):
        # (1 + 4) * 30 / (30 + 4 * 50 + 10)
        value = evaluate(MetricId("f_beta", beta=2.0), CM)
        assert value == pytest.approx(150 / 240, abs=1e-15)

    def test_wa_with_explicit_weight_needs_no_costs(self):
        assert evaluate(MetricId("wa", weight=0.5), CM) == pytest.approx(0.7)

    def test_wa_and_msu_agree_at_zero_baseline(self):
        assert evaluate("wa", CM, cost_ctx=COST_CTX) == pytest.approx(
            evaluate("msu", CM, cost_ctx=COST_CTX), abs=1e-12
        )


class TestEvaluateDispatch:
    def test_string_and_id_coercion(self):
        assert evaluate("accuracy", CM) == evaluate(MetricId("accuracy"), CM)

    def test_empty_matrix_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            evaluate("accuracy", ConfusionMatrix(0, 0, 0, 0))

    @pytest.mark.parametrize("kind", ["wca", "wra", "acd", "c_score", "msu", "h_measure", "wa"])
    def test_cost_metrics_require_costs(self, kind):
        with pytest.raises(ValueError):
            evaluate(kind, CM)

    def test_ewa_requires_distribution(self):
        with pytest.raises(ValueError):
            evaluate("ewa", CM, cost_ctx=COST_CTX)
        value = evaluate("ewa", CM, dist_ctx=BetaParams(2.0, 2.0))
        assert value == pytest.approx(0.7, abs=1e-9)  # P == N makes WA linear

    def test_ewa_accepts_uniform_distribution(self):
        value = evaluate("ewa", CM, dist_ctx=UniformInterval(0.4, 0.6))
        assert value == pytest.approx(0.7, abs=1e-9)

    def test_undefined_returns_none(self):
        no_predictions = ConfusionMatrix(tp=0, fn=5, fp=0, tn=5)
        assert evaluate("precision", no_predictions) is None
        assert evaluate("mcc", no_predictions) is None
        assert evaluate("accuracy", no_predictions) == pytest.approx(0.5)


class TestUndefinedPolicy:
    def test_vectorized_nan_for_vanishing_denominators(self):
        tp = np.array([0.0, 30.0])
        fn = np.array([5.0, 20.0])
        fp = np.array([0.0, 10.0])
        tn = np.array([5.0, 40.0])
        values = evaluate_counts("precision", tp, fn, fp, tn)
        assert math.isnan(values[0])
        assert values[1] == pytest.approx(0.75)

    def test_all_negative_dataset(self):
        # P = 0: recall, informedness, g_mean undefined; specificity fine
        assert math.isnan(evaluate_counts("recall", 0, 0, 3, 7))
        assert math.isnan(evaluate_counts("informedness", 0, 0, 3, 7))
        assert evaluate_counts("specificity", 0, 0, 3, 7) == pytest.approx(0.7)

    def test_counts_never_raise_on_domain_holes(self):
        corners = [
            (0, 0, 0, 10),
            (0, 10, 0, 0),
            (10, 0, 0, 0),
            (0, 0, 10, 0),
            (5, 0, 0, 5),
        ]
        for kind in KINDS:
            descriptor = descriptor_for(kind)
            if descriptor.needs_distribution or kind == "h_measure":
                continue
            for tp, fn, fp, tn in corners:
                value = evaluate_counts(
                    kind, tp, fn, fp, tn,
                    c_fn=2.0 if descriptor.needs_costs else None,
                    c_fp=1.0 if descriptor.needs_costs else None,
                )
                assert value.shape == ()

    def test_missing_costs_raise_rather_than_nan(self):
        with pytest.raises(ValueError, match="requires shifted costs"):
            evaluate_counts("msu", 1, 1, 1, 1)


class TestRanges:
    def test_unit_and_signed_ranges_over_random_matrices(self):
        rng = np.random.default_rng(2024)
        counts = rng.integers(0, 200, size=(10_000, 4)).astype(np.float64)
        tp, fn, fp, tn = counts.T
        unit_range = [
            "accuracy", "recall", "precision", "specificity", "npv",
            "f_beta", "g_mean", "cba", "p4", "wca", "wa",
        ]
        for kind in unit_range:
            needs = descriptor_for(kind).needs_costs
            values = evaluate_counts(
                kind, tp, fn, fp, tn,
                c_fn=2.0 if needs else None, c_fp=1.0 if needs else None,
            )
            finite = values[np.isfinite(values)]
            assert np.all(finite >= -1e-12), kind
            assert np.all(finite <= 1 + 1e-12), kind
        for kind in ("informedness", "markedness", "mcc", "kappa"):
            values = evaluate_counts(kind, tp, fn, fp, tn)
            finite = values[np.isfinite(values)]
            assert np.all(np.abs(finite) <= 1 + 1e-12), kind


class TestLabelSwapSymmetry:
    SYMMETRIC = ("accuracy", "mcc", "kappa", "g_mean", "roc_auc_single", "cba", "iam", "p4")

    @pytest.mark.parametrize("kind", SYMMETRIC)
    def test_symmetric_metrics_ignore_the_labeling(self, kind):
        rng = np.random.default_rng(7)
        for _ in range(50):
            tp, fn, fp, tn = (int(v) for v in rng.integers(0, 40, size=4))
            cm = ConfusionMatrix(tp, fn, fp, tn)
            if cm.total == 0:
                continue
            value = evaluate(kind, cm)
            swapped = evaluate(kind, cm.swapped())
            if value is None or swapped is None:
                assert value == swapped
            else:
                assert swapped == pytest.approx(value, abs=1e-12)

    def test_wa_swaps_through_the_complementary_weight(self):
        for w in (0.0, 0.25, 0.5, 0.9, 1.0):
            direct = evaluate(MetricId("wa", weight=w), CM)
            swapped = evaluate(MetricId("wa", weight=1.0 - w), CM.swapped())
            assert swapped == pytest.approx(direct, abs=1e-15)


class TestAffineFamily:
    def test_wa_msu_identical_and_c_score_reversed(self):
        rng = np.random.default_rng(11)
        tp = rng.integers(0, 50, size=200).astype(np.float64)
        fn = 50 - tp
        fp = rng.integers(0, 80, size=200).astype(np.float64)
        tn = 80 - fp
        # inject exact duplicates so tie handling is exercised
        tp[10:20] = tp[0]
        fn[10:20] = fn[0]
        fp[10:20] = fp[0]
        tn[10:20] = tn[0]
        wa = evaluate_counts("wa", tp, fn, fp, tn, c_fn=3.0, c_fp=2.0)
        msu = evaluate_counts("msu", tp, fn, fp, tn, c_fn=3.0, c_fp=2.0)
        c_score = evaluate_counts("c_score", tp, fn, fp, tn, c_fn=3.0, c_fp=2.0)
        np.testing.assert_allclose(wa, msu, atol=1e-12)
        # same ordering: wa descending == c_score ascending
        wa_order = np.argsort(-wa, kind="stable")
        cost = 3.0 * fn + 2.0 * fp
        cost_order = np.argsort(cost, kind="stable")
        np.testing.assert_array_equal(cost[wa_order], cost[cost_order])
        np.testing.assert_array_equal(c_score[wa_order], c_score[cost_order])


class TestHMeasure:
    def test_symmetric_prior_reduces_to_accuracy(self):
        # Beta(2, 2) has mean 1/2, and the cost-averaged integrands are linear
        # in the cost share, so H collapses to accuracy
        value = h_measure(CM, COSTS)
        assert value == pytest.approx(0.7, abs=1e-9)

    def test_quadrature_matches_linear_reduction(self):
        for alpha, beta in ((2.0, 2.0), (3.0, 1.5), (0.8, 2.2)):
            dist = BetaParams(alpha, beta)
            quad = h_measure(CM, COSTS, dist=dist)
            linear = h_measure_from_mean(
                float(CM.fn), float(CM.fp), float(CM.p), float(CM.n), dist.mean
            )
            assert quad == pytest.approx(float(linear), abs=1e-9)

    def test_prior_mean_tilts_the_error_weighting(self):
        # mean cost share 3/4 weights false positives three times as much
        value = h_measure(CM, COSTS, dist=BetaParams(3.0, 1.0))
        expected = 1.0 - (10 * 0.75 + 20 * 0.25) / (50 * 0.75 + 50 * 0.25)
        assert value == pytest.approx(expected, abs=1e-9)

    def test_invariant_under_cost_scale(self):
        # the shifted-cost magnitude cancels; only the prior matters
        a = h_measure(CM, ShiftedCosts(2.0, 1.0), dist=BetaParams(2.5, 1.5))
        b = h_measure(CM, ShiftedCosts(200.0, 100.0), dist=BetaParams(2.5, 1.5))
        assert a == pytest.approx(b, abs=1e-12)

    def test_via_evaluate_dispatch(self):
        assert evaluate("h_measure", CM, cost_ctx=COST_CTX) == pytest.approx(0.7, abs=1e-9)
        with pytest.raises(ValueError):
            evaluate("h_measure", CM)
