"""From-scratch classifiers with probability outputs and explanations.

Five model kinds: two dummy baselines (stratified prior and majority vote),
Gaussian naive Bayes, L2-regularized logistic regression trained by
full-batch gradient descent, and a random forest of CART trees with Gini
splits.  Every fit is deterministic given the spec (seed included) and the
data.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDataError, SchemaError
from .sessions import Dataset

MODEL_SCHEMA = "dys-model/1"

# Survives constant features; 0-1 ratings are degenerate at the extremes.
VARIANCE_FLOOR = 1e-9


class ModelKind(Enum):
    DUMMY_STRATIFIED = "dummy-stratified"
    DUMMY_MAJORITY = "dummy-majority"
    GAUSSIAN_NB = "nb"
    LOGISTIC = "logistic"
    RANDOM_FOREST = "rf"


DISPLAY_NAMES = {
    ModelKind.DUMMY_STRATIFIED: "Dummy (stratified)",
    ModelKind.DUMMY_MAJORITY: "Dummy (majority)",
    ModelKind.GAUSSIAN_NB: "Naive Bayes",
    ModelKind.LOGISTIC: "Logistic reg.",
    ModelKind.RANDOM_FOREST: "Random Forest",
}


@dataclass(frozen=True)
class ModelSpec:
    """Model kind, hyperparameters, and the seed that fixes all randomness."""

    kind: ModelKind
    seed: int = 0
    # logistic
    learning_rate: float = 0.05
    iterations: int = 2000
    l2: float = 1e-3
    # random forest
    n_trees: int = 100
    max_depth: int | None = None
    min_leaf: int = 1
    features_per_split: int | None = None  # None = ceil(sqrt(d)) at fit time
    bootstrap: bool = True

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.min_leaf < 1:
            raise ValueError("min_leaf must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 or None")
        if self.features_per_split is not None and self.features_per_split < 1:
            raise ValueError("features_per_split must be >= 1 or None")

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["kind"] = self.kind.value
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelSpec":
        doc = dict(doc)
        doc["kind"] = ModelKind(doc["kind"])
        return cls(**doc)


class ExplanationEntry(NamedTuple):
    feature: str
    value: float
    note: str


@dataclass(frozen=True)
class Prediction:
    """Positive-class probability plus a per-feature contribution note."""

    label: bool
    probability: float
    explanation: tuple[ExplanationEntry, ...]


@dataclass(frozen=True)
class TrainedModel:
    spec: ModelSpec
    feature_names: tuple[str, ...]
    parameters: dict


def _require_two_classes(data: Dataset, kind: ModelKind) -> None:
    pos = data.positive_count
    if pos == 0 or pos == len(data):
        raise DegenerateDataError(
            f"{kind.value} needs both classes; got {pos} positives in {len(data)} rows"
        )


# ---------------------------------------------------------------------------
# Logistic regression

def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def logistic_loss_and_gradient(weights, bias, X, y, l2):
    """Mean log-loss with L2 penalty on the weights (bias unpenalized).

    Returns ``(loss, gradient)`` where the gradient stacks the weight
    derivatives followed by the bias derivative.
    """
    w = np.asarray(weights, dtype=float)
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    z = X @ w + bias
    # -log sigma(z) = log(1 + e^-z); the logaddexp form is overflow-safe.
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * float(w @ w))
    residual = _sigmoid(z) - y
    grad_w = X.T @ residual / len(y) + l2 * w
    grad_b = float(np.mean(residual))
    return loss, np.append(grad_w, grad_b)


def _fit_logistic(spec: ModelSpec, data: Dataset) -> dict:
    _require_two_classes(data, spec.kind)
    mu = data.X.mean(axis=0)
    sigma = data.X.std(axis=0)
    sigma = np.where(sigma == 0.0, 1.0, sigma)
    Xs = (data.X - mu) / sigma
    y = data.y.astype(float)
    w = np.zeros(Xs.shape[1])
    b = 0.0
    history = []
    for _ in range(spec.iterations):
        loss, grad = logistic_loss_and_gradient(w, b, Xs, y, spec.l2)
        history.append(loss)
        w -= spec.learning_rate * grad[:-1]
        b -= spec.learning_rate * grad[-1]
    return {
        "weights": w.tolist(),
        "bias": b,
        "feature_means": mu.tolist(),
        "feature_scales": sigma.tolist(),
        "loss_history": history,
    }


# ---------------------------------------------------------------------------
# Gaussian naive Bayes

def _fit_gaussian_nb(spec: ModelSpec, data: Dataset) -> dict:
    _require_two_classes(data, spec.kind)
    params = {"priors": [], "means": [], "variances": []}
    n = len(data)
    for positive in (False, True):
        rows = data.X[data.y == positive]
        params["priors"].append(len(rows) / n)
        params["means"].append(rows.mean(axis=0).tolist())
        variance = np.maximum(rows.var(axis=0), VARIANCE_FLOOR)
        params["variances"].append(variance.tolist())
    return params


def _nb_class_loglik(x, mean, variance):
    mean = np.asarray(mean)
    variance = np.asarray(variance)
    return -0.5 * (np.log(2.0 * math.pi * variance) + (x - mean) ** 2 / variance)


# ---------------------------------------------------------------------------
# Random forest

def _gini_from_counts(pos, n):
    p = pos / n
    return 1.0 - p * p - (1.0 - p) * (1.0 - p)


def gini_impurity(labels) -> float:
    """Binary Gini impurity ``1 - p^2 - (1-p)^2`` of a label multiset."""
    labels = np.asarray(labels, dtype=bool)
    if labels.size == 0:
        raise ValueError("gini_impurity of an empty label set is undefined")
    return _gini_from_counts(float(labels.sum()), labels.size)


def _best_split(X, y, feature_ids, min_leaf):
    """Lowest weighted-Gini split over the candidate features.

    Thresholds are midpoints between consecutive distinct sorted values.
    Returns ``(feature, threshold)`` or ``None`` when no split keeps both
    children at ``min_leaf`` or larger.
    """
    n = len(y)
    best_impurity = np.inf
    best = None
    yf = y.astype(float)
    for f in feature_ids:
        values = X[:, f]
        order = np.argsort(values, kind="stable")
        sv = values[order]
        cum_pos = np.cumsum(yf[order])
        left_pos, total_pos = cum_pos[:-1], cum_pos[-1]
        left_n = np.arange(1, n)
        right_n = n - left_n
        valid = (sv[:-1] != sv[1:]) & (left_n >= min_leaf) & (right_n >= min_leaf)
        if not valid.any():
            continue
        p_left = left_pos / left_n
        p_right = (total_pos - left_pos) / right_n
        weighted = (
            left_n * (1.0 - p_left**2 - (1.0 - p_left) ** 2)
            + right_n * (1.0 - p_right**2 - (1.0 - p_right) ** 2)
        ) / n
        weighted[~valid] = np.inf
        i = int(np.argmin(weighted))
        if weighted[i] < best_impurity:
            threshold = (sv[i] + sv[i + 1]) / 2.0
            if threshold >= sv[i + 1]:  # midpoint rounded up to the right value
                threshold = sv[i]
            best_impurity = weighted[i]
            best = (int(f), float(threshold))
    return best


def _grow_tree(X, y, rng, max_depth, min_leaf, features_per_split, depth=0):
    n = len(y)
    pos = float(y.sum())
    if (
        pos == 0.0
        or pos == n
        or (max_depth is not None and depth >= max_depth)
        or n < 2 * min_leaf
    ):
        return {"fraction": pos / n, "n": int(n)}
    d = X.shape[1]
    feature_ids = np.sort(rng.choice(d, size=min(features_per_split, d), replace=False))
    split = _best_split(X, y, feature_ids, min_leaf)
    if split is None:
        return {"fraction": pos / n, "n": int(n)}
    feature, threshold = split
    left = X[:, feature] <= threshold
    return {
        "feature": feature,
        "threshold": threshold,
        "left": _grow_tree(X[left], y[left], rng, max_depth, min_leaf,
                           features_per_split, depth + 1),
        "right": _grow_tree(X[~left], y[~left], rng, max_depth, min_leaf,
                            features_per_split, depth + 1),
    }


def _fit_random_forest(spec: ModelSpec, data: Dataset) -> dict:
    _require_two_classes(data, spec.kind)
    d = data.X.shape[1]
    per_split = spec.features_per_split or math.ceil(math.sqrt(d))
    if per_split > d:
        raise ValueError(f"features_per_split={per_split} exceeds feature arity {d}")
    trees = []
    n = len(data)
    for index in range(spec.n_trees):
        # Seeds derive from spec.seed + tree index, so a parallel fit would
        # produce the identical forest.
        rng = np.random.default_rng(spec.seed + index)
        if spec.bootstrap:
            sample = rng.integers(0, n, size=n)
            X, y = data.X[sample], data.y[sample]
        else:
            X, y = data.X, data.y
        trees.append(_grow_tree(X, y, rng, spec.max_depth, spec.min_leaf, per_split))
    return {"trees": trees}


def _tree_fraction(node, x):
    while "feature" in node:
        node = node["left"] if x[node["feature"]] <= node["threshold"] else node["right"]
    return node["fraction"]


def _tree_split_counts(node, counts):
    if "feature" in node:
        counts[node["feature"]] += 1
        _tree_split_counts(node["left"], counts)
        _tree_split_counts(node["right"], counts)


# ---------------------------------------------------------------------------
# fit / predict

def fit(spec: ModelSpec, data: Dataset) -> TrainedModel:
    """Train a model of the requested kind on a labeled dataset."""
    if len(data) == 0:
        raise ValueError("cannot fit on an empty dataset")
    if spec.kind is ModelKind.DUMMY_STRATIFIED:
        parameters = {"prior": data.positive_count / len(data)}
    elif spec.kind is ModelKind.DUMMY_MAJORITY:
        # Tie goes to positive, matching the 0.5-probability tie rule.
        parameters = {"majority": bool(data.positive_count * 2 >= len(data))}
    elif spec.kind is ModelKind.GAUSSIAN_NB:
        parameters = _fit_gaussian_nb(spec, data)
    elif spec.kind is ModelKind.LOGISTIC:
        parameters = _fit_logistic(spec, data)
    elif spec.kind is ModelKind.RANDOM_FOREST:
        parameters = _fit_random_forest(spec, data)
    else:  # pragma: no cover
        raise ValueError(f"unknown model kind {spec.kind}")
    return TrainedModel(spec=spec, feature_names=data.feature_names, parameters=parameters)


def _check_arity(model: TrainedModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.shape != (len(model.feature_names),):
        raise SchemaError(
            f"feature vector has {x.size} entries, model expects {len(model.feature_names)}"
        )
    return x


def predict(model: TrainedModel, x) -> Prediction:
    """Positive-class probability, thresholded label (ties positive), and
    a per-feature explanation appropriate to the model kind.
    """
    x = _check_arity(model, x)
    params = model.parameters
    kind = model.spec.kind
    explanation: list[ExplanationEntry] = []

    if kind is ModelKind.DUMMY_STRATIFIED:
        probability = float(params["prior"])
    elif kind is ModelKind.DUMMY_MAJORITY:
        probability = 1.0 if params["majority"] else 0.0
    elif kind is ModelKind.GAUSSIAN_NB:
        logliks = []
        per_feature = []
        for prior, mean, variance in zip(params["priors"], params["means"], params["variances"]):
            feature_ll = _nb_class_loglik(x, mean, variance)
            per_feature.append(feature_ll)
            logliks.append(math.log(prior) + float(feature_ll.sum()))
        norm = np.logaddexp(logliks[0], logliks[1])
        probability = float(np.exp(logliks[1] - norm))
        ratio = per_feature[1] - per_feature[0]
        for name, value, r in zip(model.feature_names, x, ratio):
            explanation.append(ExplanationEntry(
                name, float(value), f"log-likelihood ratio {r:+.4f}"
            ))
    elif kind is ModelKind.LOGISTIC:
        w = np.asarray(params["weights"])
        xs = (x - np.asarray(params["feature_means"])) / np.asarray(params["feature_scales"])
        probability = float(_sigmoid(w @ xs + params["bias"]))
        for name, value, contribution in zip(model.feature_names, x, w * xs):
            explanation.append(ExplanationEntry(
                name, float(value), f"weight x standardized value = {contribution:+.4f}"
            ))
    elif kind is ModelKind.RANDOM_FOREST:
        trees = params["trees"]
        probability = float(np.mean([_tree_fraction(t, x) for t in trees]))
        counts = np.zeros(len(model.feature_names))
        for tree in trees:
            _tree_split_counts(tree, counts)
        total = counts.sum()
        for name, value, count in zip(model.feature_names, x, counts):
            share = count / total if total else 0.0
            explanation.append(ExplanationEntry(
                name, float(value), f"used in {share:.1%} of splits"
            ))
    else:  # pragma: no cover
        raise ValueError(f"unknown model kind {kind}")

    return Prediction(
        label=probability >= 0.5,
        probability=probability,
        explanation=tuple(explanation),
    )


def predict_labels(model: TrainedModel, X) -> np.ndarray:
    """Deterministic thresholded labels for a feature matrix."""
    return np.array([predict(model, row).label for row in np.asarray(X, dtype=float)])


def sample_labels(model: TrainedModel, n: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded simulation variant of the stratified dummy: Bernoulli(prior)."""
    if model.spec.kind is not ModelKind.DUMMY_STRATIFIED:
        raise ValueError("sample_labels only applies to the stratified dummy")
    return rng.random(n) < model.parameters["prior"]


# ---------------------------------------------------------------------------
# Model files

def save_model(model: TrainedModel, path) -> None:
    """Write the model as JSON (``.model.json``)."""
    doc = {
        "schema_version": MODEL_SCHEMA,
        "spec": model.spec.to_dict(),
        "feature_schema": list(model.feature_names),
        "parameters": model.parameters,
    }
    Path(path).write_text(json.dumps(doc, indent=1), encoding="utf-8")


def load_model(path) -> TrainedModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("schema_version") != MODEL_SCHEMA:
        raise SchemaError(
            f"{path}: expected schema_version {MODEL_SCHEMA!r}, got {doc.get('schema_version')!r}"
        )
    schema = doc.get("feature_schema")
    if not isinstance(schema, list) or not all(isinstance(n, str) for n in schema):
        raise SchemaError(f"{path}: feature_schema must be a list of feature names")
    return TrainedModel(
        spec=ModelSpec.from_dict(doc["spec"]),
        feature_names=tuple(schema),
        parameters=doc["parameters"],
    )
