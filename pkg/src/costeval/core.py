"""Core types: confusion matrices, costed examples, and classification outcomes."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Label(enum.Enum):
    """Binary class label."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class ConfusionMatrix:
    """Outcome counts of a binary classifier on a labeled dataset.

    Counts are exact non-negative integers; metric evaluation promotes
    them to float.
    """

    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fn", "fp", "tn"):
            value = getattr(self, name)
            if isinstance(value, bool):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            if not isinstance(value, int):
                # accept numpy integer scalars but nothing fractional
                if hasattr(value, "is_integer") and not value.is_integer():
                    raise ValueError(f"{name} must be an integer, got {value!r}")
                try:
                    coerced = int(value)
                except (TypeError, ValueError):
                    raise ValueError(f"{name} must be an integer, got {value!r}") from None
                if coerced != value:
                    raise ValueError(f"{name} must be an integer, got {value!r}")
                object.__setattr__(self, name, coerced)
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {value!r}")

    @property
    def p(self) -> int:
        """Number of actual positives."""
        return self.tp + self.fn

    @property
    def n(self) -> int:
        """Number of actual negatives."""
        return self.tn + self.fp

    @property
    def total(self) -> int:
        return self.p + self.n

    def swapped(self) -> "ConfusionMatrix":
        """The same outcomes with the positive and negative labels exchanged."""
        return ConfusionMatrix(tp=self.tn, fn=self.fp, fp=self.fn, tn=self.tp)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.tp, self.fn, self.fp, self.tn)


@dataclass(frozen=True)
class LabeledExample:
    """One example with its label and per-example unit classification costs.

    ``ucc_correct`` is the cost incurred when the example is classified
    correctly, ``ucc_incorrect`` when it is misclassified.  Misclassifying
    must cost strictly more than classifying correctly.
    """

    id: str
    label: Label
    ucc_correct: float
    ucc_incorrect: float

    def __post_init__(self) -> None:
        if not isinstance(self.label, Label):
            raise ValueError(f"label must be a Label, got {self.label!r}")
        for name in ("ucc_correct", "ucc_incorrect"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.ucc_incorrect > self.ucc_correct:
            raise ValueError(
                f"example {self.id!r}: ucc_incorrect ({self.ucc_incorrect}) must exceed "
                f"ucc_correct ({self.ucc_correct})"
            )

    @property
    def shifted_cost(self) -> float:
        """Extra cost of misclassifying this example; always positive."""
        return self.ucc_incorrect - self.ucc_correct


@dataclass(frozen=True)
class CostedDataset:
    """An ordered collection of labeled, costed examples with unique ids."""

    examples: tuple[LabeledExample, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "examples", tuple(self.examples))
        if not self.examples:
            raise ValueError("dataset must contain at least one example")
        by_id: dict[str, LabeledExample] = {}
        for example in self.examples:
            if example.id in by_id:
                raise ValueError(f"duplicate example id {example.id!r}")
            by_id[example.id] = example
        object.__setattr__(self, "_by_id", by_id)

    @property
    def positives(self) -> tuple[LabeledExample, ...]:
        return tuple(e for e in self.examples if e.label is Label.POSITIVE)

    @property
    def negatives(self) -> tuple[LabeledExample, ...]:
        return tuple(e for e in self.examples if e.label is Label.NEGATIVE)

    @property
    def p(self) -> int:
        return sum(1 for e in self.examples if e.label is Label.POSITIVE)

    @property
    def n_neg(self) -> int:
        return len(self.examples) - self.p

    @property
    def n_tot(self) -> int:
        return len(self.examples)

    @property
    def r_plus(self) -> float:
        """Positive class ratio P / N_tot."""
        return self.p / self.n_tot

    def __contains__(self, example_id: str) -> bool:
        return example_id in self._by_id

    def get(self, example_id: str) -> LabeledExample:
        return self._by_id[example_id]


@dataclass(frozen=True)
class ClassificationOutcome:
    """The set of example ids a classifier predicted as positive."""

    predicted_positive: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "predicted_positive", frozenset(self.predicted_positive))


def confusion_from_outcome(
    dataset: CostedDataset, outcome: ClassificationOutcome
) -> ConfusionMatrix:
    """Count tp/fn/fp/tn for an outcome against a dataset.

    Every predicted-positive id must belong to the dataset.
    """
    unknown = [i for i in outcome.predicted_positive if i not in dataset]
    if unknown:
        raise ValueError(f"outcome references unknown example ids: {sorted(unknown)[:5]}")
    tp = fn = fp = tn = 0
    for example in dataset.examples:
        predicted = example.id in outcome.predicted_positive
        if example.label is Label.POSITIVE:
            if predicted:
                tp += 1
            else:
                fn += 1
        else:
            if predicted:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fn=fn, fp=fp, tn=tn)
