"""Selection analytics over precomputed Shapley attributions.

Attribution vectors arrive with the dataset (one per trip, toward the
positive class); this module only aggregates them.  Per-class grouping uses
true labels by default, since the per-class comparison is between actual
outcome groups; grouping by predicted labels is available as an explicit
alternative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptySelectionError,
    IntegrityError,
    UnknownFeatureError,
)
from .odplot import TripTable

#: Default bin count for continuous feature histograms.
DEFAULT_HIST_BINS = 20


@dataclass(frozen=True)
class AttributionTable:
    """Per-trip Shapley vectors, columns aligned with ``feature_names``."""

    trip_ids: np.ndarray  # (t,) int64
    values: np.ndarray  # (t, m) float64
    feature_names: tuple[str, ...]

    def __post_init__(self):
        if self.values.shape != (len(self.trip_ids), len(self.feature_names)):
            raise IntegrityError(
                f"attribution matrix shape {self.values.shape} does not match "
                f"{len(self.trip_ids)} trips x {len(self.feature_names)} features"
            )
        if len(np.unique(self.trip_ids)) != len(self.trip_ids):
            raise IntegrityError("attribution trip_ids are not unique")

    @cached_property
    def index(self) -> dict[int, int]:
        return {int(t): i for i, t in enumerate(self.trip_ids)}


@dataclass(frozen=True)
class FeatureImportance:
    name: str
    mean_abs_class0: float | None  # None when the class is absent from the selection
    mean_abs_class1: float | None


@dataclass(frozen=True)
class ImportanceReport:
    """Per-feature mean |phi| by class, sorted by the larger mean, descending
    (ties keep the dataset's feature order)."""

    features: tuple[FeatureImportance, ...]


@dataclass(frozen=True)
class ClassEvaluation:
    support: int
    hit_pct: float | None  # None when support == 0
    miss_pct: float | None


@dataclass(frozen=True)
class EvaluationReport:
    class0: ClassEvaluation
    class1: ClassEvaluation


@dataclass(frozen=True)
class FeatureDetail:
    """Distribution of one feature over the selection, split by class.

    Discrete: ``categories`` lists the axis (sorted, shared by both classes)
    and the count arrays align with it.  Continuous: ``bin_edges`` is the
    shared axis (len == bins + 1).
    """

    name: str
    kind: str
    categories: tuple[str, ...] | None
    bin_edges: tuple[float, ...] | None
    class0_counts: tuple[int, ...]
    class1_counts: tuple[int, ...]


def _selection_rows(ids: Sequence[int], t: TripTable) -> np.ndarray:
    if len(ids) == 0:
        raise EmptySelectionError("selection contains no trips")
    return t.rows_for(ids)


def importance(
    ids: Sequence[int],
    t: TripTable,
    a: AttributionTable,
    group_by: str = "label",
) -> ImportanceReport:
    """Mean absolute attribution per feature, separately per class.

    ``group_by`` is "label" (true class, the default) or "predicted".
    """
    if group_by not in ("label", "predicted"):
        raise ValueError(f"group_by must be 'label' or 'predicted', got {group_by!r}")
    rows = _selection_rows(ids, t)
    if tuple(a.feature_names) != tuple(t.feature_names):
        raise IntegrityError("attribution features do not match trip features")
    lut = a.index
    try:
        arows = np.array([lut[int(t.trip_ids[r])] for r in rows], dtype=np.int64)
    except KeyError as exc:
        raise IntegrityError(f"trip {exc.args[0]} has no attribution vector") from None
    groups = t.labels if group_by == "label" else t.predicted
    cls = groups[rows]
    abs_phi = np.abs(a.values[arows])
    means: list[np.ndarray | None] = []
    for c in (0, 1):
        sub = abs_phi[cls == c]
        means.append(sub.mean(axis=0) if len(sub) else None)
    entries = []
    for j, name in enumerate(a.feature_names):
        m0 = float(means[0][j]) if means[0] is not None else None
        m1 = float(means[1][j]) if means[1] is not None else None
        entries.append(FeatureImportance(name, m0, m1))
    entries.sort(key=lambda e: -max(v for v in (e.mean_abs_class0, e.mean_abs_class1) if v is not None))
    return ImportanceReport(features=tuple(entries))


def evaluate(ids: Sequence[int], t: TripTable) -> EvaluationReport:
    """Per-class hit/miss percentages of the classifier on the selection."""
    rows = _selection_rows(ids, t)
    labels = t.labels[rows]
    hits = t.predicted[rows] == labels
    per_class = []
    for c in (0, 1):
        in_class = labels == c
        support = int(in_class.sum())
        if support == 0:
            per_class.append(ClassEvaluation(0, None, None))
            continue
        n_hit = int((hits & in_class).sum())
        hit_pct = 100.0 * n_hit / support
        miss_pct = 100.0 * (support - n_hit) / support
        per_class.append(ClassEvaluation(support, hit_pct, miss_pct))
    return EvaluationReport(class0=per_class[0], class1=per_class[1])


def feature_detail(
    ids: Sequence[int],
    t: TripTable,
    feature: str,
    bins: int = DEFAULT_HIST_BINS,
) -> FeatureDetail:
    """Distribution of one feature over the selection, per class, on a
    shared axis.

    Discrete features get exhaustive category frequencies (categories
    present in the selection, sorted).  Continuous ones get ``bins``
    equal-width bins over the combined min-max of both classes; a
    zero-width range degenerates to one unit-width bin centered on the
    value.
    """
    if feature not in t.feature_names:
        raise UnknownFeatureError(f"unknown feature {feature!r}")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    rows = _selection_rows(ids, t)
    kind = t.kind_of(feature)
    col = t.features[feature][rows]
    labels = t.labels[rows]
    if kind == "discrete":
        categories = tuple(sorted(set(str(v) for v in col)))
        cat_index = {c: i for i, c in enumerate(categories)}
        counts = np.zeros((2, len(categories)), dtype=np.int64)
        for value, label in zip(col, labels):
            counts[int(label), cat_index[str(value)]] += 1
        return FeatureDetail(
            name=feature,
            kind=kind,
            categories=categories,
            bin_edges=None,
            class0_counts=tuple(int(c) for c in counts[0]),
            class1_counts=tuple(int(c) for c in counts[1]),
        )
    values = col.astype(np.float64)
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        edges = np.array([lo - 0.5, lo + 0.5])
    else:
        edges = np.linspace(lo, hi, bins + 1)
    c0, _ = np.histogram(values[labels == 0], bins=edges)
    c1, _ = np.histogram(values[labels == 1], bins=edges)
    return FeatureDetail(
        name=feature,
        kind=kind,
        categories=None,
        bin_edges=tuple(float(e) for e in edges),
        class0_counts=tuple(int(c) for c in c0),
        class1_counts=tuple(int(c) for c in c1),
    )


def linear_shapley(
    weights: np.ndarray,
    bias: float,
    background_mean: np.ndarray,
    x: np.ndarray,
) -> np.ndarray:
    """Exact Shapley values for a linear model f(x) = w.x + b with mean
    imputation of missing features: phi_i = w_i * (x_i - mean_i).

    Satisfies local accuracy: sum(phi) + f(mean) == f(x).  This is the
    in-repo oracle the aggregation tests lean on.
    """
    weights = np.asarray(weights, dtype=np.float64)
    background_mean = np.asarray(background_mean, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if not (weights.shape == background_mean.shape == x.shape):
        raise DimensionMismatchError(
            f"shapes disagree: weights {weights.shape}, "
            f"background {background_mean.shape}, x {x.shape}"
        )
    return weights * (x - background_mean)
