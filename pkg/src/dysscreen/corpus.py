"""Corpus ingestion: tokenization, frequency buckets, and the 4-gram index.

Raw book texts go in, a :class:`WordBank` comes out.  The bank carries the
reference dictionary (every corpus word), the frequency-ranked short and long
word lists used for real-word sampling, the set of attested 4-letter
fragments used by the pseudo-word filter, and the easy-word list that opens
every assessment.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import CorpusDecodeError, EmptyBucketError

# Maximal runs of letters; digits, underscores and punctuation split tokens,
# so hyphenated and apostrophised forms contribute their parts.
_WORD_RE = re.compile(r"[^\W\d_]+")

# Characters skipped when looking backwards for a sentence boundary.
_QUOTE_CHARS = set("\"'“”‘’")
_SENTENCE_ENDERS = set(".!?")

DEFAULT_BUCKET_CAP = 2000
DEFAULT_EASY_COUNT = 50


@dataclass(frozen=True)
class Token:
    """A lowercase corpus word together with its occurrence count."""

    text: str
    count: int


class LengthBucket(Enum):
    SHORT = "Short"
    LONG = "Long"

    @property
    def length_range(self):
        return _BUCKET_RANGES[self]

    def admits(self, length: int) -> bool:
        lo, hi = _BUCKET_RANGES[self]
        return lo <= length <= hi


_BUCKET_RANGES = {LengthBucket.SHORT: (4, 6), LengthBucket.LONG: (7, 9)}


@dataclass(frozen=True)
class WordBank:
    """Immutable corpus summary feeding word-list generation.

    ``short_list`` and ``long_list`` are ordered by descending count with
    lexicographic tie-break and truncated to the configured cap;
    ``fourgrams`` holds every 4-character contiguous substring of every
    dictionary word; ``easy_words`` is a prefix of ``short_list``.
    """

    dictionary: frozenset[str]
    short_list: tuple[Token, ...]
    long_list: tuple[Token, ...]
    fourgrams: frozenset[str]
    easy_words: tuple[Token, ...]

    def bucket_tokens(self, bucket: LengthBucket) -> tuple[Token, ...]:
        return self.short_list if bucket is LengthBucket.SHORT else self.long_list


def _is_sentence_start(doc: str, token_start: int) -> bool:
    j = token_start - 1
    while j >= 0 and (doc[j].isspace() or doc[j] in _QUOTE_CHARS):
        j -= 1
    return j < 0 or doc[j] in _SENTENCE_ENDERS


def _tokenize_document(doc: str) -> Counter:
    counts: Counter = Counter()
    for match in _WORD_RE.finditer(doc):
        token = match.group(0)
        if not token.isascii():
            continue
        # Capitalized away from a sentence start reads as a proper noun;
        # that occurrence is dropped rather than the whole word type.
        if token[0].isupper() and not _is_sentence_start(doc, match.start()):
            continue
        counts[token.lower()] += 1
    return counts


def tokenize_corpus(texts, names=None) -> list[Token]:
    """Count lowercase word occurrences across documents.

    ``texts`` is a sequence of documents, each ``str`` or UTF-8 ``bytes``.
    Proper nouns (capitalized tokens away from a sentence start) and tokens
    containing non-ASCII letters are dropped.  Returns tokens ordered by
    descending count, ties broken lexicographically.

    Raises :class:`CorpusDecodeError` naming the document when bytes do not
    decode; ``names`` supplies those labels (defaults to the position).
    """
    texts = list(texts)
    if names is None:
        names = [f"document {i}" for i in range(len(texts))]
    total: Counter = Counter()
    for name, doc in zip(names, texts):
        if isinstance(doc, bytes):
            try:
                doc = doc.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusDecodeError(f"{name}: not valid UTF-8 ({exc})") from exc
        total.update(_tokenize_document(doc))
    return [Token(text, count) for text, count in
            sorted(total.items(), key=lambda item: (-item[1], item[0]))]


def tokenize_directory(directory) -> list[Token]:
    """Tokenize every ``*.txt`` file under ``directory`` (sorted by name)."""
    paths = sorted(Path(directory).glob("*.txt"))
    return tokenize_corpus([p.read_bytes() for p in paths], [str(p) for p in paths])


def build_word_bank(tokens, cap: int = DEFAULT_BUCKET_CAP,
                    easy_count: int = DEFAULT_EASY_COUNT) -> WordBank:
    """Bucket tokens by length and assemble the :class:`WordBank`.

    The dictionary keeps every token regardless of length; only the ranked
    bucket lists are filtered and capped.  Raises
    :class:`EmptyBucketError` when a bucket has no words at all.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if easy_count < 1:
        raise ValueError(f"easy_count must be >= 1, got {easy_count}")
    merged: Counter = Counter()
    for token in tokens:
        merged[token.text] += token.count
    if not merged:
        raise ValueError("token sequence is empty")

    ranked = sorted(merged.items(), key=lambda item: (-item[1], item[0]))
    buckets = {}
    for bucket in LengthBucket:
        lo, hi = bucket.length_range
        entries = [Token(w, c) for w, c in ranked if lo <= len(w) <= hi][:cap]
        if not entries:
            raise EmptyBucketError(f"empty {bucket.value} bucket")
        buckets[bucket] = tuple(entries)

    dictionary = frozenset(merged)
    fourgrams = frozenset(
        word[i:i + 4] for word in dictionary for i in range(len(word) - 3)
    )
    short_list = buckets[LengthBucket.SHORT]
    return WordBank(
        dictionary=dictionary,
        short_list=short_list,
        long_list=buckets[LengthBucket.LONG],
        fourgrams=fourgrams,
        easy_words=short_list[:easy_count],
    )


def fourgram_attested(bank: WordBank, fragment: str) -> bool:
    """True iff the 4-letter fragment occurs contiguously in a corpus word."""
    if len(fragment) != 4:
        raise ValueError(f"fragment must be exactly 4 characters, got {fragment!r}")
    return fragment in bank.fourgrams


def save_word_bank(bank: WordBank, path) -> None:
    """Write the bank as JSON (``.bank.json``); fourgrams are recomputed on load."""
    doc = {
        "dictionary": sorted(bank.dictionary),
        "short_list": [{"word": t.text, "count": t.count} for t in bank.short_list],
        "long_list": [{"word": t.text, "count": t.count} for t in bank.long_list],
        "easy_words": [t.text for t in bank.easy_words],
    }
    Path(path).write_text(json.dumps(doc, indent=1), encoding="utf-8")


def load_word_bank(path) -> WordBank:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    dictionary = frozenset(doc["dictionary"])
    short_list = tuple(Token(e["word"], e["count"]) for e in doc["short_list"])
    long_list = tuple(Token(e["word"], e["count"]) for e in doc["long_list"])
    by_text = {t.text: t for t in short_list}
    easy_words = tuple(by_text[w] for w in doc["easy_words"])
    fourgrams = frozenset(
        word[i:i + 4] for word in dictionary for i in range(len(word) - 3)
    )
    return WordBank(dictionary, short_list, long_list, fourgrams, easy_words)


def sample_corpus_dir() -> Path:
    """Directory holding the small text corpus shipped with the package."""
    return Path(__file__).parent / "data" / "corpus"
