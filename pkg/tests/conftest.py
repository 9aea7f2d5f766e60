import random

import pytest

from dysscreen.corpus import build_word_bank, sample_corpus_dir, tokenize_directory
from dysscreen.sessions import session_to_doc
from dysscreen.wordgen import default_difficulty, train_char_model


@pytest.fixture(scope="session")
def sample_tokens():
    return tokenize_directory(sample_corpus_dir())


@pytest.fixture(scope="session")
def sample_bank(sample_tokens):
    return build_word_bank(sample_tokens)


@pytest.fixture(scope="session")
def char_model(sample_bank):
    return train_char_model(sample_bank, seed=1234)


@pytest.fixture(scope="session")
def difficulty():
    return default_difficulty()


def fill_session_doc(wordlist, session_id="s-test", age=None, label=None, seed=7):
    """A plausible completed session for a word list, as a raw document."""
    from dysscreen.sessions import ReadingSession, WordRecord

    rng = random.Random(seed)
    ages = {"Band1": 7, "Band2": 10, "Band3": 15}
    records = tuple(
        WordRecord(
            word=item,
            correct=rng.random() > 0.2,
            backtrack=rng.random() < 0.15,
            reaction_ms=round(rng.uniform(300, 2500), 1),
        )
        for item in wordlist.items
    )
    session = ReadingSession(
        session_id=session_id,
        age_years=age if age is not None else ages[wordlist.age_band.value],
        records=records,
        label=label,
        wordlist_seed=wordlist.seed,
    )
    return session_to_doc(session)
