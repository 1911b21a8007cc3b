"""Estimating the WA weight from partial cost knowledge.

Two routes: directly from a known misclassification cost ratio, or by
bracketing the weight from an assumed quality ranking of emblematic
classifiers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .weighting import WeightSpec, _weight_value


class ModelKind(enum.Enum):
    """Emblematic classifiers; declaration order breaks ranking ties."""

    M_PLUS = "m_plus"  # labels every example positive
    M_MINUS = "m_minus"  # labels every example negative
    M_BAD = "m_bad"  # misclassifies a fraction alpha of both classes
    M_BAD_MINUS = "m_bad_minus"  # misclassifies a fraction alpha of negatives only
    M_BAD_PLUS = "m_bad_plus"  # misclassifies a fraction alpha of positives only


_KIND_ORDER = {kind: index for index, kind in enumerate(ModelKind)}
_NEEDS_ALPHA = frozenset({ModelKind.M_BAD, ModelKind.M_BAD_MINUS, ModelKind.M_BAD_PLUS})


@dataclass(frozen=True)
class EmblematicModel:
    """One emblematic classifier; alpha is its misclassification fraction."""

    kind: ModelKind
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.kind in _NEEDS_ALPHA:
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ValueError(
                    f"{self.kind.value} needs a misclassification fraction in (0, 1), "
                    f"got {self.alpha!r}"
                )
        elif self.alpha is not None:
            raise ValueError(f"{self.kind.value} takes no misclassification fraction")


@dataclass(frozen=True)
class WeightInterval:
    """A bracket [w_min, w_max] for the WA weight."""

    w_min: float
    w_max: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.w_min <= self.w_max <= 1.0):
            raise ValueError(
                f"need 0 <= w_min <= w_max <= 1, got [{self.w_min!r}, {self.w_max!r}]"
            )

    @property
    def midpoint(self) -> float:
        return (self.w_min + self.w_max) / 2.0


def emblematic_numerator(
    model: EmblematicModel, w: float | WeightSpec, p: int, n: int
) -> float:
    """WA numerator A_num of an emblematic model on a dataset with P positives, N negatives."""
    if p <= 0 or n <= 0:
        raise ValueError(f"both classes must be non-empty, got P={p}, N={n}")
    weight = _weight_value(w)
    alpha = model.alpha
    if model.kind is ModelKind.M_PLUS:
        return weight * p
    if model.kind is ModelKind.M_MINUS:
        return (1.0 - weight) * n
    if model.kind is ModelKind.M_BAD:
        return (1.0 - alpha) * (weight * p + (1.0 - weight) * n)
    if model.kind is ModelKind.M_BAD_MINUS:
        return weight * p + (1.0 - alpha) * (1.0 - weight) * n
    if model.kind is ModelKind.M_BAD_PLUS:
        return (1.0 - alpha) * weight * p + (1.0 - weight) * n
    raise AssertionError(f"unhandled model kind {model.kind!r}")


def rank_emblematic(
    models: "list[EmblematicModel] | tuple[EmblematicModel, ...]",
    w: float | WeightSpec,
    p: int,
    n: int,
) -> list[EmblematicModel]:
    """Models ordered best first by WA numerator; exact ties break by ModelKind order."""
    return sorted(
        models,
        key=lambda m: (-emblematic_numerator(m, w, p, n), _KIND_ORDER[m.kind]),
    )


def constraints_from_ranking(alpha: float, p: int, n: int) -> WeightInterval:
    """Weight bracket implied by the emblematic ranking at misclassification fraction alpha.

    The upper bound makes M_+ no better than M_bad, the lower bound makes
    M_- no better than M_bad-:

        w_min = 1 / (1 + P / (alpha * N)),
        w_max = 1 / (1 + alpha * P / ((1 - alpha) * N)).

    Requires alpha in [0.5, 1).  The two constraints are simultaneously
    satisfiable only for alpha up to (sqrt(5) - 1) / 2; beyond that the
    bracket inverts for every P/N and this raises.
    """
    if not 0.5 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0.5, 1), got {alpha!r}")
    if p <= 0 or n <= 0:
        raise ValueError(f"both classes must be non-empty, got P={p}, N={n}")
    w_min = 1.0 / (1.0 + p / (alpha * n))
    w_max = 1.0 / (1.0 + alpha * p / ((1.0 - alpha) * n))
    if w_min > w_max:
        raise ValueError(
            f"ranking constraints are unsatisfiable at alpha={alpha}: "
            f"lower bound {w_min:.6f} exceeds upper bound {w_max:.6f} "
            f"(the bracket inverts for alpha > (sqrt(5) - 1) / 2 ~ 0.618)"
        )
    return WeightInterval(w_min=w_min, w_max=w_max)


def ranking_consistent(w: float | WeightSpec, alpha: float, p: int, n: int) -> bool:
    """Whether a weight reproduces the full emblematic quality ordering.

    Checks A(M_+) <= A(M_bad) <= A(M_-) <= A(M_bad-) <= A(M_bad+) at w,
    with a small relative tolerance so the bracket endpoints returned by
    constraints_from_ranking (where one inequality binds exactly) count
    as consistent despite rounding.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    chain = [
        EmblematicModel(ModelKind.M_PLUS),
        EmblematicModel(ModelKind.M_BAD, alpha),
        EmblematicModel(ModelKind.M_MINUS),
        EmblematicModel(ModelKind.M_BAD_MINUS, alpha),
        EmblematicModel(ModelKind.M_BAD_PLUS, alpha),
    ]
    numerators = [emblematic_numerator(m, w, p, n) for m in chain]
    return all(
        a <= b + 1e-12 * max(1.0, abs(a), abs(b))
        for a, b in zip(numerators, numerators[1:])
    )


def weight_from_ucc_ratio(v: float) -> WeightSpec:
    """Weight from a known cost ratio v = C_FN / C_FP: w = v / (v + 1)."""
    if not (math.isfinite(v) and v > 0):
        raise ValueError(f"cost ratio must be positive and finite, got {v!r}")
    return WeightSpec(v / (v + 1.0))
