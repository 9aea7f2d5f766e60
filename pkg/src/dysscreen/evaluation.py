"""Imbalance-aware evaluation: metrics, stratified k-fold CV, and reports.

Accuracy, precision, recall and f1 follow the standard confusion-matrix
formulas; degenerate cases (for example a model that never predicts the
positive class) yield 0 with an explicit flag instead of an undefined value,
so reports stay total and honest.  Also provides seeded synthetic cohorts
for end-to-end testing, since the clinical datasets are private.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDataError, SchemaError, StratificationError
from .learners import (
    DISPLAY_NAMES,
    ModelKind,
    ModelSpec,
    TrainedModel,
    fit,
    predict_labels,
    sample_labels,
)
from .sessions import DYSLEXIA_FEATURE_NAMES, Dataset

FLAG_NO_POSITIVE_PREDICTIONS = "no-positive-predictions"
FLAG_NO_POSITIVE_LABELS = "no-positive-labels"
FLAG_F1_UNDEFINED = "f1-undefined"

METRIC_NAMES = ("accuracy", "precision", "recall", "f1")

REPORT_NOTES = (
    "bracketed values are population standard deviations over folds",
    "folds are stratified by label",
)


def _rng(*parts) -> np.random.Generator:
    return np.random.default_rng([int(p) % 2**32 for p in parts])


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp, self.fp + other.fp,
            self.tn + other.tn, self.fn + other.fn,
        )

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


def confusion(predictions, labels) -> ConfusionCounts:
    """Count the four confusion cells for boolean predictions vs labels."""
    predictions = np.asarray(predictions, dtype=bool)
    labels = np.asarray(labels, dtype=bool)
    if predictions.shape != labels.shape:
        raise ValueError(
            f"length mismatch: {predictions.shape} predictions vs {labels.shape} labels"
        )
    if predictions.size == 0:
        raise ValueError("cannot build a confusion matrix from zero pairs")
    return ConfusionCounts(
        tp=int(np.sum(predictions & labels)),
        fp=int(np.sum(predictions & ~labels)),
        tn=int(np.sum(~predictions & ~labels)),
        fn=int(np.sum(~predictions & labels)),
    )


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    flags: frozenset[str]

    def value(self, name: str) -> float:
        return getattr(self, name)


def metrics(c: ConfusionCounts) -> Metrics:
    """Accuracy, precision, recall, f1; degenerate cells become 0 + flag."""
    if c.total == 0:
        raise ValueError("metrics of an empty confusion matrix are undefined")
    flags = set()
    accuracy = (c.tp + c.tn) / c.total
    if c.tp + c.fp == 0:
        precision = 0.0
        flags.add(FLAG_NO_POSITIVE_PREDICTIONS)
    else:
        precision = c.tp / (c.tp + c.fp)
    if c.tp + c.fn == 0:
        recall = 0.0
        flags.add(FLAG_NO_POSITIVE_LABELS)
    else:
        recall = c.tp / (c.tp + c.fn)
    if precision + recall == 0.0:
        f1 = 0.0
        flags.add(FLAG_F1_UNDEFINED)
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return Metrics(accuracy, precision, recall, f1, frozenset(flags))


# ---------------------------------------------------------------------------
# Stratified k-fold

def stratified_kfold(n: int, labels, k: int, seed: int) -> list[np.ndarray]:
    """Partition ``range(n)`` into k folds preserving the class balance.

    Fold sizes differ by at most one, per-fold positive counts differ by at
    most one, and assignment follows a seeded shuffle of each class.
    """
    labels = np.asarray(labels, dtype=bool)
    if labels.shape != (n,):
        raise ValueError(f"labels must have length n={n}, got {labels.shape}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    for value, name in ((True, "positive"), (False, "negative")):
        count = int(np.sum(labels == value))
        if count < k:
            raise StratificationError(
                f"{name} class has {count} members; stratifying needs at least k={k}"
            )
    rng = _rng(seed)
    positives = rng.permutation(np.flatnonzero(labels))
    negatives = rng.permutation(np.flatnonzero(~labels))

    def allocation(count: int) -> list[int]:
        base, extra = divmod(count, k)
        return [base + (1 if i < extra else 0) for i in range(k)]

    # Folds that take an extra row overall also take the extra positives,
    # which keeps the negative counts within one of each other too.
    pos_counts = allocation(len(positives))
    fold_sizes = allocation(n)
    folds = []
    p = q = 0
    for i in range(k):
        neg_take = fold_sizes[i] - pos_counts[i]
        fold = np.concatenate([
            positives[p:p + pos_counts[i]],
            negatives[q:q + neg_take],
        ])
        p += pos_counts[i]
        q += neg_take
        folds.append(np.sort(fold))
    return folds


# ---------------------------------------------------------------------------
# Cross-validation

@dataclass(frozen=True)
class EvaluationReport:
    """Per-fold metrics with aggregates, summed confusion, and provenance."""

    spec: ModelSpec
    k: int
    seed: int
    fold_metrics: tuple[Metrics, ...]
    mean: dict
    sd: dict
    confusion_total: ConfusionCounts
    dataset_fingerprint: str
    notes: tuple[str, ...] = REPORT_NOTES

    @property
    def display_name(self) -> str:
        return DISPLAY_NAMES[self.spec.kind]

    def to_dict(self) -> dict:
        return {
            "model": self.display_name,
            "spec": self.spec.to_dict(),
            "k": self.k,
            "seed": self.seed,
            "folds": [
                {
                    "accuracy": m.accuracy,
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "flags": sorted(m.flags),
                }
                for m in self.fold_metrics
            ],
            "mean": self.mean,
            "sd": self.sd,
            "confusion": self.confusion_total.to_dict(),
            "dataset_fingerprint": self.dataset_fingerprint,
            "notes": list(self.notes),
        }


def dataset_fingerprint(data: Dataset) -> str:
    digest = hashlib.sha256()
    digest.update("\x1f".join(data.feature_names).encode())
    digest.update(np.ascontiguousarray(data.X).tobytes())
    digest.update(np.ascontiguousarray(data.y).tobytes())
    return digest.hexdigest()[:12]


def _fold_predictions(model: TrainedModel, X, fold_rng) -> np.ndarray:
    if model.spec.kind is ModelKind.DUMMY_STRATIFIED:
        return sample_labels(model, len(X), fold_rng)
    return predict_labels(model, X)


def cross_validate(spec: ModelSpec, data: Dataset, k: int, seed: int) -> EvaluationReport:
    """Stratified k-fold CV: fit on each complement, score the held-out fold."""
    folds = stratified_kfold(len(data), data.y, k, seed)
    fold_metrics = []
    total = None
    for i, fold in enumerate(folds):
        train_mask = np.ones(len(data), dtype=bool)
        train_mask[fold] = False
        train = Dataset(data.feature_names, data.X[train_mask], data.y[train_mask])
        try:
            model = fit(spec, train)
        except Exception as exc:
            raise type(exc)(f"fold {i}: {exc}") from exc
        predictions = _fold_predictions(model, data.X[fold], _rng(seed, i))
        c = confusion(predictions, data.y[fold])
        fold_metrics.append(metrics(c))
        total = c if total is None else total + c
    mean = {}
    sd = {}
    for name in METRIC_NAMES:
        values = np.array([m.value(name) for m in fold_metrics])
        mean[name] = float(values.mean())
        sd[name] = float(values.std())  # population sd
    return EvaluationReport(
        spec=spec,
        k=k,
        seed=seed,
        fold_metrics=tuple(fold_metrics),
        mean=mean,
        sd=sd,
        confusion_total=total,
        dataset_fingerprint=dataset_fingerprint(data),
    )


# ---------------------------------------------------------------------------
# Report rendering

def _cell(report: EvaluationReport, name: str) -> str:
    if name == "accuracy":  # reported as a percentage, like the other three are ratios
        return f"{100 * report.mean[name]:.1f} [{100 * report.sd[name]:.1f}]"
    return f"{report.mean[name]:.2f} [{report.sd[name]:.2f}]"


def format_report_table(reports, notes: bool = True) -> str:
    """Plain-text table: one row per algorithm, ``mean [sd]`` cells."""
    reports = list(reports)
    headers = ["Alg.", "Accuracy", "Precision", "Recall", "f1"]
    rows = [
        [r.display_name] + [_cell(r, name) for name in METRIC_NAMES]
        for r in reports
    ]
    widths = [
        max(len(headers[col]), *(len(row[col]) for row in rows)) if rows else len(headers[col])
        for col in range(len(headers))
    ]
    lines = [
        " | ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "-+-".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append(" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    if notes and reports:
        lines.append("")
        for note in reports[0].notes:
            lines.append(f"# {note}")
    return "\n".join(lines) + "\n"


def format_confusion_ascii(c: ConfusionCounts) -> str:
    width = max(len(str(v)) for v in (c.tp, c.fp, c.tn, c.fn))
    width = max(width, len("pred neg"))
    return "\n".join([
        f"{'':>12} {'pred neg':>{width}} {'pred pos':>{width}}",
        f"{'actual neg':>12} {c.tn:>{width}} {c.fp:>{width}}",
        f"{'actual pos':>12} {c.fn:>{width}} {c.tp:>{width}}",
    ]) + "\n"


# ---------------------------------------------------------------------------
# Group comparison (real vs pseudo words, by class)

class ComparisonRow(NamedTuple):
    group: str
    word_kind: str
    error_rate_mean: float
    error_rate_sd: float
    reading_time_ms_mean: float
    reading_time_ms_sd: float


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]

    def to_csv(self) -> str:
        lines = ["group,word_kind,error_rate_mean,error_rate_sd,"
                 "reading_time_ms_mean,reading_time_ms_sd"]
        for r in self.rows:
            lines.append(
                f"{r.group},{r.word_kind},{r.error_rate_mean!r},{r.error_rate_sd!r},"
                f"{r.reading_time_ms_mean!r},{r.reading_time_ms_sd!r}"
            )
        return "\n".join(lines) + "\n"


# word kind -> (error-rate column, reading-time column)
DEFAULT_COMPARISON_COLUMNS = {
    "real": ("avg_error_real", "avg_reaction_ms_real"),
    "pseudo": ("avg_error_pseudo", "avg_reaction_ms_pseudo"),
}


def group_comparison(data: Dataset, columns: dict | None = None) -> ComparisonTable:
    """Error rate and reading time broken down by class and word kind.

    ``columns`` maps each word kind to its (error, time) feature pair and
    defaults to the real/pseudo split of the dyslexia schema.
    """
    if columns is None:
        columns = DEFAULT_COMPARISON_COLUMNS
    index = {name: i for i, name in enumerate(data.feature_names)}
    needed = [col for cols in columns.values() for col in cols]
    missing = [col for col in needed if col not in index]
    if missing:
        raise SchemaError(
            "dataset lacks dyslexia-schema columns: " + ", ".join(missing)
        )
    if data.positive_count in (0, len(data)):
        raise DegenerateDataError("group comparison needs both classes present")
    rows = []
    for group, mask in (("negative", ~data.y), ("positive", data.y)):
        block = data.X[mask]
        for kind, (err_col, time_col) in columns.items():
            errors = block[:, index[err_col]]
            times = block[:, index[time_col]]
            rows.append(ComparisonRow(
                group, kind,
                float(errors.mean()), float(errors.std()),
                float(times.mean()), float(times.std()),
            ))
    return ComparisonTable(tuple(rows))


# ---------------------------------------------------------------------------
# Synthetic cohorts

class FeatureSpec(NamedTuple):
    """Per-class normal distribution for one feature, with optional clipping."""

    name: str
    negative_mean: float
    negative_sd: float
    positive_mean: float
    positive_sd: float
    lo: float | None = None
    hi: float | None = None


@dataclass(frozen=True)
class CohortSpec:
    n_total: int
    positive_fraction: float
    features: tuple[FeatureSpec, ...]
    seed: int = 0

    def __post_init__(self):
        if self.n_total < 2:
            raise ValueError("n_total must be >= 2")
        if not 0.0 < self.positive_fraction < 1.0:
            raise ValueError(
                f"positive_fraction must be in (0, 1), got {self.positive_fraction}"
            )
        if not self.features:
            raise ValueError("cohort needs at least one feature")
        for f in self.features:
            if f.negative_sd < 0 or f.positive_sd < 0:
                raise ValueError(f"feature {f.name}: spreads must be >= 0")
            for mean in (f.negative_mean, f.positive_mean):
                if (f.lo is not None and mean < f.lo) or (f.hi is not None and mean > f.hi):
                    raise ValueError(
                        f"feature {f.name}: mean {mean} outside range [{f.lo}, {f.hi}]"
                    )

    @property
    def positive_count(self) -> int:
        # round half up
        return int(math.floor(self.positive_fraction * self.n_total + 0.5))


def make_cohort(spec: CohortSpec) -> Dataset:
    """Seeded synthetic dataset honoring each feature's range. Deterministic."""
    n_pos = spec.positive_count
    n_neg = spec.n_total - n_pos
    if n_pos < 1 or n_neg < 1:
        raise ValueError(
            f"cohort of {spec.n_total} with fraction {spec.positive_fraction} "
            f"leaves a class empty"
        )
    rng = _rng(spec.seed)
    columns = []
    for f in spec.features:
        pos = rng.normal(f.positive_mean, f.positive_sd, size=n_pos)
        neg = rng.normal(f.negative_mean, f.negative_sd, size=n_neg)
        column = np.concatenate([pos, neg])
        if f.lo is not None or f.hi is not None:
            column = np.clip(column, f.lo, f.hi)
        columns.append(column)
    X = np.stack(columns, axis=1)
    y = np.concatenate([np.ones(n_pos, dtype=bool), np.zeros(n_neg, dtype=bool)])
    order = rng.permutation(spec.n_total)
    return Dataset(
        feature_names=tuple(f.name for f in spec.features),
        X=X[order],
        y=y[order],
    )


def dyslexia_cohort_spec(n_total: int = 500, positive_fraction: float = 0.13,
                         seed: int = 0) -> CohortSpec:
    """Reading-feature cohort with the observed qualitative class pattern:
    dyslexic readers err more, backtrack more, and start later, with the gap
    widest on pseudo-words.
    """
    f = FeatureSpec
    features = (
        f("age_years", 10.5, 2.5, 10.5, 2.5, 6, 16),
        f("avg_error", 0.08, 0.05, 0.40, 0.10, 0, 1),
        f("avg_backtrack", 0.07, 0.05, 0.35, 0.10, 0, 1),
        f("avg_reaction_ms", 750, 170, 1400, 300, 0, None),
        f("avg_error_real", 0.05, 0.04, 0.25, 0.10, 0, 1),
        f("avg_backtrack_real", 0.05, 0.04, 0.25, 0.10, 0, 1),
        f("avg_reaction_ms_real", 650, 150, 1100, 250, 0, None),
        f("avg_error_pseudo", 0.12, 0.06, 0.55, 0.12, 0, 1),
        f("avg_backtrack_pseudo", 0.10, 0.06, 0.45, 0.12, 0, 1),
        f("avg_reaction_ms_pseudo", 850, 200, 1700, 350, 0, None),
    )
    assert tuple(s.name for s in features) == DYSLEXIA_FEATURE_NAMES
    return CohortSpec(n_total, positive_fraction, features, seed)


def dysgraphia_cohort_spec(n_total: int = 500, positive_fraction: float = 0.13,
                           seed: int = 0) -> CohortSpec:
    """Handwriting-rating cohort: dysgraphic writers rate much lower on the
    three regularity features and somewhat higher on spacing and amplitude.
    """
    f = FeatureSpec
    return CohortSpec(n_total, positive_fraction, (
        f("slant", 0.55, 0.12, 0.45, 0.20, 0, 1),
        f("pressure", 0.50, 0.12, 0.62, 0.18, 0, 1),
        f("amplitude", 0.50, 0.12, 0.65, 0.18, 0, 1),
        f("letter_spacing", 0.45, 0.12, 0.60, 0.18, 0, 1),
        f("word_spacing", 0.50, 0.12, 0.65, 0.18, 0, 1),
        f("slant_regularity", 0.75, 0.10, 0.32, 0.15, 0, 1),
        f("size_regularity", 0.75, 0.10, 0.30, 0.15, 0, 1),
        f("horizontal_regularity", 0.78, 0.10, 0.35, 0.15, 0, 1),
    ), seed)
