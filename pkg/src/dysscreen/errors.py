"""Exception types shared across the toolkit."""


class DysscreenError(Exception):
    """Base class for all toolkit errors."""


class CorpusDecodeError(DysscreenError):
    """A corpus document could not be decoded as UTF-8."""


class EmptyBucketError(DysscreenError):
    """A length bucket ended up empty, so list generation is impossible."""


class ExhaustionError(DysscreenError):
    """Sampling ran out of attempts (or pool entries) before finishing."""


class UnsupportedAgeError(DysscreenError):
    """No word-list recipe exists for the requested age."""


class SessionValidationError(DysscreenError):
    """A session or handwriting document failed validation."""


class SchemaError(DysscreenError):
    """A document, dataset, or model carries the wrong schema."""


class DegenerateDataError(DysscreenError):
    """Training data lacks the class diversity the model requires."""


class StratificationError(DysscreenError):
    """A class has too few members to stratify into the requested folds."""
