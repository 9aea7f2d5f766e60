"""Data model and featurization for reading sessions and handwriting sheets.

Defines the two document formats shared with any assessment front end
(``dys-session/1`` and ``dys-hand/1``), the 10-feature dyslexia vector and
8-feature handwriting vector, and the labeled :class:`Dataset` consumed by
the learners.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LengthBucket
from .errors import SchemaError, SessionValidationError
from .wordgen import WordItem, WordKind, WordList

SESSION_SCHEMA = "dys-session/1"
HANDWRITING_SCHEMA = "dys-hand/1"

# Reaction times above this are clamped at parse time (UI timer leak guard).
REACTION_CEILING_MS = 60_000.0

DYSLEXIA_FEATURE_NAMES = (
    "age_years",
    "avg_error",
    "avg_backtrack",
    "avg_reaction_ms",
    "avg_error_real",
    "avg_backtrack_real",
    "avg_reaction_ms_real",
    "avg_error_pseudo",
    "avg_backtrack_pseudo",
    "avg_reaction_ms_pseudo",
)

HANDWRITING_FEATURE_NAMES = (
    "slant",
    "pressure",
    "amplitude",
    "letter_spacing",
    "word_spacing",
    "slant_regularity",
    "size_regularity",
    "horizontal_regularity",
)


@dataclass(frozen=True)
class WordRecord:
    """One word's outcome: pronunciation tag, backtrack tag, reaction time."""

    word: WordItem
    correct: bool
    backtrack: bool
    reaction_ms: float


@dataclass(frozen=True)
class ReadingSession:
    """A full assessment: demographics plus the per-word records.

    ``label`` carries official-diagnosis semantics; ``None`` means
    undiagnosed, never negative.  ``wordlist_seed`` lets a service
    regenerate the list the session was run against.
    """

    session_id: str
    age_years: int
    records: tuple[WordRecord, ...]
    label: bool | None = None
    wordlist_seed: int | None = None


@dataclass(frozen=True)
class HandwritingSample:
    """Eight 0-1 feature ratings of a handwriting photo, plus optional label."""

    sample_id: str
    ratings: tuple[float, ...]
    label: bool | None = None

    def __post_init__(self):
        if len(self.ratings) != len(HANDWRITING_FEATURE_NAMES):
            raise ValueError(
                f"expected {len(HANDWRITING_FEATURE_NAMES)} ratings, got {len(self.ratings)}"
            )
        for name, value in zip(HANDWRITING_FEATURE_NAMES, self.ratings):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"rating {name}={value} outside [0, 1]")


@dataclass(frozen=True)
class Dataset:
    """Labeled feature matrix; the boolean target means 'diagnosed'."""

    feature_names: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "X", np.asarray(self.X, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=bool))
        if self.X.ndim != 2 or self.X.shape[1] != len(self.feature_names):
            raise ValueError(
                f"X must be (n, {len(self.feature_names)}), got {self.X.shape}"
            )
        if self.y.shape != (self.X.shape[0],):
            raise ValueError("y length must match X rows")

    def __len__(self):
        return self.X.shape[0]

    @property
    def positive_count(self) -> int:
        return int(self.y.sum())


def extract_dyslexia_features(session: ReadingSession) -> np.ndarray:
    """The 10-feature vector: age, then error/backtrack/time means over all
    words, real words (easy ones included), and pseudo-words.
    """
    real = [r for r in session.records if r.word.kind.is_real]
    pseudo = [r for r in session.records if r.word.kind is WordKind.PSEUDO]
    if not real or not pseudo:
        raise SessionValidationError(
            f"session {session.session_id}: needs at least one real and one "
            f"pseudo record ({len(real)} real, {len(pseudo)} pseudo)"
        )

    def stats(records):
        n = len(records)
        return (
            sum(1.0 - r.correct for r in records) / n,
            sum(float(r.backtrack) for r in records) / n,
            sum(r.reaction_ms for r in records) / n,
        )

    return np.array([
        float(session.age_years),
        *stats(session.records),
        *stats(real),
        *stats(pseudo),
    ])


def handwriting_features(sample: HandwritingSample) -> np.ndarray:
    return np.array(sample.ratings, dtype=float)


# ---------------------------------------------------------------------------
# Document formats

def _parse_reaction_ms(value, where: str) -> float:
    reaction = float(value)
    if reaction < 0:
        raise SessionValidationError(f"{where}: reaction_ms {reaction} is negative")
    if reaction > REACTION_CEILING_MS:
        warnings.warn(
            f"{where}: reaction_ms {reaction} above ceiling, clamped to {REACTION_CEILING_MS}"
        )
        reaction = REACTION_CEILING_MS
    return reaction


def session_to_doc(session: ReadingSession) -> dict:
    doc = {
        "schema": SESSION_SCHEMA,
        "session_id": session.session_id,
        "age_years": session.age_years,
        "wordlist_seed": session.wordlist_seed,
        "records": [
            {
                "text": r.word.text,
                "kind": r.word.kind.value,
                "bucket": r.word.bucket.value,
                "correct": r.correct,
                "backtrack": r.backtrack,
                "reaction_ms": r.reaction_ms,
            }
            for r in session.records
        ],
    }
    if session.label is not None:
        doc["label"] = session.label
    return doc


def session_from_doc(doc: dict) -> ReadingSession:
    """Parse and range-check a ``dys-session/1`` document."""
    if not isinstance(doc, dict):
        raise SchemaError("session document must be a JSON object")
    if doc.get("schema") != SESSION_SCHEMA:
        raise SchemaError(f"expected schema {SESSION_SCHEMA!r}, got {doc.get('schema')!r}")
    session_id = str(doc.get("session_id", ""))
    if not session_id:
        raise SessionValidationError("session_id missing or empty")
    age = doc.get("age_years")
    if not isinstance(age, int) or age < 6:
        raise SessionValidationError(f"session {session_id}: age_years must be an integer >= 6, got {age!r}")
    records = []
    for i, r in enumerate(doc.get("records", [])):
        try:
            word = WordItem(r["text"], WordKind(r["kind"]), LengthBucket(r["bucket"]))
        except (KeyError, ValueError) as exc:
            raise SessionValidationError(f"session {session_id}: record {i}: {exc}") from exc
        if not isinstance(r.get("correct"), bool) or not isinstance(r.get("backtrack"), bool):
            raise SessionValidationError(
                f"session {session_id}: record {i} ({word.text}): correct/backtrack must be booleans"
            )
        reaction = _parse_reaction_ms(
            r.get("reaction_ms", -1.0), f"session {session_id}: record {i} ({word.text})"
        )
        records.append(WordRecord(word, r["correct"], r["backtrack"], reaction))
    label = doc.get("label")
    if label is not None and not isinstance(label, bool):
        raise SessionValidationError(f"session {session_id}: label must be a boolean when present")
    return ReadingSession(
        session_id=session_id,
        age_years=age,
        records=tuple(records),
        label=label,
        wordlist_seed=doc.get("wordlist_seed"),
    )


def validate_session(raw: dict, wordlist: WordList) -> ReadingSession:
    """Full validation of a parsed session document against its word list."""
    session = session_from_doc(raw)
    expected = len(wordlist.items)
    if len(session.records) != expected:
        raise SessionValidationError(
            f"expected {expected} records, found {len(session.records)}"
        )
    got = sorted((r.word.text, r.word.kind.value, r.word.bucket.value) for r in session.records)
    want = sorted((w.text, w.kind.value, w.bucket.value) for w in wordlist.items)
    if got != want:
        missing = sorted(set(want) - set(got))
        extra = sorted(set(got) - set(want))
        parts = []
        if missing:
            parts.append("missing: " + ", ".join(t[0] for t in missing))
        if extra:
            parts.append("unexpected: " + ", ".join(t[0] for t in extra))
        raise SessionValidationError(
            "session words do not match the word list (" + "; ".join(parts) + ")"
        )
    return session


def handwriting_to_doc(sample: HandwritingSample) -> dict:
    doc = {
        "schema": HANDWRITING_SCHEMA,
        "sample_id": sample.sample_id,
        "ratings": dict(zip(HANDWRITING_FEATURE_NAMES, sample.ratings)),
    }
    if sample.label is not None:
        doc["label"] = sample.label
    return doc


def handwriting_from_doc(doc: dict) -> HandwritingSample:
    """Parse and range-check a ``dys-hand/1`` document."""
    if not isinstance(doc, dict):
        raise SchemaError("handwriting document must be a JSON object")
    if doc.get("schema") != HANDWRITING_SCHEMA:
        raise SchemaError(f"expected schema {HANDWRITING_SCHEMA!r}, got {doc.get('schema')!r}")
    sample_id = str(doc.get("sample_id", ""))
    if not sample_id:
        raise SessionValidationError("sample_id missing or empty")
    ratings = doc.get("ratings")
    if not isinstance(ratings, dict):
        raise SessionValidationError(f"sample {sample_id}: ratings must be an object")
    missing = [n for n in HANDWRITING_FEATURE_NAMES if n not in ratings]
    extra = [n for n in ratings if n not in HANDWRITING_FEATURE_NAMES]
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing: " + ", ".join(missing))
        if extra:
            parts.append("unexpected: " + ", ".join(extra))
        raise SessionValidationError(f"sample {sample_id}: bad rating keys ({'; '.join(parts)})")
    values = []
    for name in HANDWRITING_FEATURE_NAMES:
        value = float(ratings[name])
        if not 0.0 <= value <= 1.0:
            raise SessionValidationError(f"sample {sample_id}: rating {name}={value} outside [0, 1]")
        values.append(value)
    label = doc.get("label")
    if label is not None and not isinstance(label, bool):
        raise SessionValidationError(f"sample {sample_id}: label must be a boolean when present")
    return HandwritingSample(sample_id=sample_id, ratings=tuple(values), label=label)


def load_session(path) -> ReadingSession:
    return session_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))


def save_session(session: ReadingSession, path) -> None:
    Path(path).write_text(json.dumps(session_to_doc(session), indent=1), encoding="utf-8")


def load_handwriting(path) -> HandwritingSample:
    return handwriting_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))


def save_handwriting(sample: HandwritingSample, path) -> None:
    Path(path).write_text(json.dumps(handwriting_to_doc(sample), indent=1), encoding="utf-8")


# ---------------------------------------------------------------------------
# Dataset assembly

def to_dataset(items) -> Dataset:
    """Turn labeled sessions or handwriting samples into a :class:`Dataset`.

    Rows keep input order.  Any unlabeled element is an error: absence of a
    diagnosis is not a negative label.
    """
    items = list(items)
    if not items:
        raise ValueError("cannot build a dataset from zero items")
    rows = []
    labels = []
    if isinstance(items[0], ReadingSession):
        names = DYSLEXIA_FEATURE_NAMES
        for session in items:
            if session.label is None:
                raise SessionValidationError(f"session {session.session_id} is unlabeled")
            rows.append(extract_dyslexia_features(session))
            labels.append(session.label)
    elif isinstance(items[0], HandwritingSample):
        names = HANDWRITING_FEATURE_NAMES
        for sample in items:
            if sample.label is None:
                raise SessionValidationError(f"sample {sample.sample_id} is unlabeled")
            rows.append(handwriting_features(sample))
            labels.append(sample.label)
    else:
        raise TypeError(f"cannot featurize {type(items[0]).__name__}")
    return Dataset(feature_names=names, X=np.array(rows), y=np.array(labels))


def save_dataset_csv(dataset: Dataset, path) -> None:
    """CSV export: feature header plus a trailing ``label`` column of 1/0."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(dataset.feature_names) + ["label"])
        for row, label in zip(dataset.X, dataset.y):
            writer.writerow([repr(float(v)) for v in row] + [int(label)])


def load_dataset_csv(path) -> Dataset:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[-1] != "label":
            raise SchemaError(f"{path}: expected a header ending in 'label'")
        names = tuple(header[:-1])
        X, y = [], []
        for line, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise SchemaError(f"{path}:{line}: expected {len(header)} columns, got {len(row)}")
            X.append([float(v) for v in row[:-1]])
            y.append(row[-1].strip() == "1")
    if not X:
        raise SchemaError(f"{path}: no data rows")
    return Dataset(feature_names=names, X=np.array(X), y=np.array(y))
