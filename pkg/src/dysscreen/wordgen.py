"""Pseudo-word generation and assembly of the 32-item assessment list.

A character-level sequence model (an n-gram Markov chain by default) proposes
letter strings that resemble corpus words.  Admissibility is decided by a
separate filter, which is where correctness lives: a pseudo-word must be
absent from the dictionary, have every contiguous 4-gram attested in some
real word, contain a difficult letter or letter combination, and fit its
length bucket.
"""

from __future__ import annotations

import bisect
import json
import random
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from .corpus import LengthBucket, WordBank
from .errors import ExhaustionError, UnsupportedAgeError

BEGIN = "^"
END = "$"

DEFAULT_ORDER = 4
DEFAULT_DIFFICULT_LETTERS = frozenset("bdpq")
DEFAULT_DIFFICULT_COMBINATIONS = frozenset({"ie", "ei", "ou", "gh", "th"})

# Sampling a word is abandoned past this length; such strings can never fit
# a bucket anyway.
_MAX_SAMPLE_LEN = 12

LIST_SIZE = 32
EASY_WORD_COUNT = 2


@dataclass(frozen=True)
class CharModel:
    """Character n-gram model over dictionary words with boundary markers.

    ``transitions`` maps a context of ``order`` symbols (left-padded with
    ``^``) to next-symbol counts; ``$`` terminates a word.  Training is
    deterministic given the bank and order; sampling is driven by
    ``rng_seed``.
    """

    order: int
    transitions: dict
    rng_seed: int

    def distribution(self, context: str) -> dict:
        """Next-symbol probability distribution for a context."""
        counts = self.transitions[context]
        total = sum(counts.values())
        return {ch: n / total for ch, n in counts.items()}

    def with_seed(self, seed: int) -> "CharModel":
        return replace(self, rng_seed=seed)


def train_char_model(bank: WordBank, order: int = DEFAULT_ORDER, seed: int = 0) -> CharModel:
    """Estimate transition counts from the bank's dictionary."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if not bank.dictionary:
        raise ValueError("cannot train a character model on an empty dictionary")
    transitions: dict = {}
    for word in sorted(bank.dictionary):
        context = BEGIN * order
        for ch in word + END:
            slot = transitions.setdefault(context, {})
            slot[ch] = slot.get(ch, 0) + 1
            context = (context + ch)[-order:]
    return CharModel(order=order, transitions=transitions, rng_seed=seed)


class _Sampler:
    """Cumulative-count tables for fast, deterministic categorical draws."""

    def __init__(self, model: CharModel):
        self.order = model.order
        self.tables = {}
        for context, counts in model.transitions.items():
            items = sorted(counts.items())
            chars = [ch for ch, _ in items]
            cumulative = []
            running = 0
            for _, n in items:
                running += n
                cumulative.append(running)
            self.tables[context] = (chars, cumulative, running)

    def sample_word(self, rng: random.Random) -> str:
        context = BEGIN * self.order
        out = []
        while True:
            chars, cumulative, total = self.tables[context]
            ch = chars[bisect.bisect_right(cumulative, rng.random() * total)]
            if ch == END:
                return "".join(out)
            out.append(ch)
            if len(out) > _MAX_SAMPLE_LEN:
                return "".join(out)
            context = (context + ch)[-self.order:]


@dataclass(frozen=True)
class DifficultySet:
    """Letters and 2-3 letter combinations that trip up dyslexic readers."""

    letters: frozenset[str]
    combinations: frozenset[str]

    def __post_init__(self):
        if not self.letters and not self.combinations:
            raise ValueError("difficulty set must name at least one letter or combination")
        for ch in self.letters:
            if not (len(ch) == 1 and ch.isalpha() and ch.islower()):
                raise ValueError(f"difficulty letter must be one lowercase letter: {ch!r}")
        for combo in self.combinations:
            if not (2 <= len(combo) <= 3 and combo.isalpha() and combo.islower()):
                raise ValueError(f"difficulty combination must be 2-3 lowercase letters: {combo!r}")

    def matches(self, word: str) -> bool:
        return any(ch in self.letters for ch in word) or any(
            combo in word for combo in self.combinations
        )


def default_difficulty() -> DifficultySet:
    return DifficultySet(DEFAULT_DIFFICULT_LETTERS, DEFAULT_DIFFICULT_COMBINATIONS)


class WordKind(Enum):
    REAL = "Real"
    PSEUDO = "Pseudo"
    EASY_REAL = "EasyReal"

    @property
    def is_real(self) -> bool:
        return self is not WordKind.PSEUDO


class AgeBand(Enum):
    BAND1 = "Band1"  # ages 6-8
    BAND2 = "Band2"  # ages 9-13
    BAND3 = "Band3"  # ages 14+


@dataclass(frozen=True)
class WordItem:
    text: str
    kind: WordKind
    bucket: LengthBucket


@dataclass(frozen=True)
class WordList:
    """Ordered 32-item assessment list: an easy pair, then the band's blocks."""

    items: tuple[WordItem, ...]
    age_band: AgeBand
    seed: int

    def __post_init__(self):
        if len(self.items) != LIST_SIZE:
            raise ValueError(f"word list must hold {LIST_SIZE} items, got {len(self.items)}")
        texts = [item.text for item in self.items]
        if len(set(texts)) != len(texts):
            raise ValueError("word list contains duplicate texts")
        if any(item.kind is not WordKind.EASY_REAL for item in self.items[:EASY_WORD_COUNT]):
            raise ValueError("word list must open with the two easy real words")


def band_for_age(age_years: int) -> AgeBand:
    if age_years < 6:
        raise UnsupportedAgeError(f"no word-list recipe for age {age_years}; ages start at 6")
    if age_years <= 8:
        return AgeBand.BAND1
    if age_years <= 13:
        return AgeBand.BAND2
    return AgeBand.BAND3


# Per band: (real, pseudo) counts for the short block then the long block.
# With the two easy openers this fills the 32 slots.
BAND_RECIPES = {
    AgeBand.BAND1: ((10, 10), (5, 5)),
    AgeBand.BAND2: ((5, 5), (10, 10)),
    AgeBand.BAND3: ((0, 0), (15, 15)),
}


def is_admissible_pseudoword(candidate: str, bank: WordBank,
                             difficulty: DifficultySet, bucket: LengthBucket) -> bool:
    """Check the three pseudo-word constraints plus the bucket length.

    Admissible means: not a dictionary word, every contiguous 4-gram attested
    (strings shorter than 4 fail), contains a difficult letter or
    combination, and length inside the bucket's range.
    """
    if not bucket.admits(len(candidate)):
        return False
    if candidate in bank.dictionary:
        return False
    if len(candidate) < 4:
        return False
    for i in range(len(candidate) - 3):
        if candidate[i:i + 4] not in bank.fourgrams:
            return False
    return difficulty.matches(candidate)


def generate_pseudowords(model: CharModel, bank: WordBank, difficulty: DifficultySet,
                         bucket: LengthBucket, n: int, max_attempts: int | None = None) -> list[str]:
    """Sample ``n`` distinct admissible pseudo-words from the model.

    Deterministic given the inputs: the RNG is seeded from ``model.rng_seed``
    on every call.  Raises :class:`ExhaustionError` when ``max_attempts``
    samples (default ``1000 * n``) yield fewer than ``n`` admissible words.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if max_attempts is None:
        max_attempts = 1000 * n
    if max_attempts < 1:
        raise ValueError(f"max_attempts must be >= 1, got {max_attempts}")
    sampler = _Sampler(model)
    rng = random.Random(model.rng_seed)
    found: list[str] = []
    seen = set()
    for _ in range(max_attempts):
        word = sampler.sample_word(rng)
        if word in seen:
            continue
        if is_admissible_pseudoword(word, bank, difficulty, bucket):
            seen.add(word)
            found.append(word)
            if len(found) == n:
                return found
    raise ExhaustionError(
        f"found only {len(found)} of {n} admissible {bucket.value}-bucket "
        f"pseudo-words in {max_attempts} attempts"
    )


def _sample_real_words(rng: random.Random, bank: WordBank, bucket: LengthBucket,
                       n: int, exclude: set) -> list[str]:
    pool = [t.text for t in bank.bucket_tokens(bucket) if t.text not in exclude]
    if len(pool) < n:
        raise ExhaustionError(
            f"bank offers {len(pool)} usable {bucket.value}-bucket words, need {n}"
        )
    return rng.sample(pool, n)


def assemble_word_list(bank: WordBank, model: CharModel, difficulty: DifficultySet,
                       age_years: int, seed: int) -> WordList:
    """Build the 32-word list for an age: easy pair, short block, long block.

    Real words are drawn uniformly without replacement from the bank's
    ranked buckets, pseudo-words from the model (reseeded per block so lists
    with different seeds differ), and each block is shuffled so real and
    pseudo items interleave.  Deterministic given the seed.
    """
    band = band_for_age(age_years)
    rng = random.Random(seed)

    easy_pool = [t.text for t in bank.easy_words]
    if len(easy_pool) < EASY_WORD_COUNT:
        raise ExhaustionError(
            f"bank offers {len(easy_pool)} easy words, need {EASY_WORD_COUNT}"
        )
    easy_texts = rng.sample(easy_pool, EASY_WORD_COUNT)
    items = [WordItem(text, WordKind.EASY_REAL, LengthBucket.SHORT) for text in easy_texts]

    used = set(easy_texts)
    recipe = BAND_RECIPES[band]
    for bucket, (n_real, n_pseudo) in zip((LengthBucket.SHORT, LengthBucket.LONG), recipe):
        if n_real == 0 and n_pseudo == 0:
            continue
        real_texts = _sample_real_words(rng, bank, bucket, n_real, used)
        used.update(real_texts)
        block = [WordItem(text, WordKind.REAL, bucket) for text in real_texts]
        block_seed = rng.getrandbits(63)
        for text in generate_pseudowords(model.with_seed(block_seed), bank,
                                         difficulty, bucket, n_pseudo):
            block.append(WordItem(text, WordKind.PSEUDO, bucket))
        rng.shuffle(block)
        items.extend(block)

    return WordList(items=tuple(items), age_band=band, seed=seed)


def word_list_to_doc(wordlist: WordList) -> dict:
    return {
        "age_band": wordlist.age_band.value,
        "seed": wordlist.seed,
        "items": [
            {"text": item.text, "kind": item.kind.value, "bucket": item.bucket.value}
            for item in wordlist.items
        ],
    }


def word_list_from_doc(doc: dict) -> WordList:
    items = tuple(
        WordItem(e["text"], WordKind(e["kind"]), LengthBucket(e["bucket"]))
        for e in doc["items"]
    )
    return WordList(items=items, age_band=AgeBand(doc["age_band"]), seed=doc["seed"])


def save_word_list(wordlist: WordList, path) -> None:
    """Write the list as JSON (``.wordlist.json``)."""
    Path(path).write_text(json.dumps(word_list_to_doc(wordlist), indent=1), encoding="utf-8")


def load_word_list(path) -> WordList:
    return word_list_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))
