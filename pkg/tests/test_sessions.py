import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dysscreen.corpus import LengthBucket
from dysscreen.errors import SchemaError, SessionValidationError
from dysscreen.sessions import (
    DYSLEXIA_FEATURE_NAMES,
    HANDWRITING_FEATURE_NAMES,
    REACTION_CEILING_MS,
    Dataset,
    HandwritingSample,
    ReadingSession,
    WordRecord,
    extract_dyslexia_features,
    handwriting_from_doc,
    handwriting_to_doc,
    load_dataset_csv,
    save_dataset_csv,
    session_from_doc,
    session_to_doc,
    to_dataset,
    validate_session,
)
from dysscreen.wordgen import WordItem, WordKind, assemble_word_list

from conftest import fill_session_doc


def record(kind, correct, backtrack, reaction_ms, text="word"):
    bucket = LengthBucket.SHORT if len(text) <= 6 else LengthBucket.LONG
    return WordRecord(WordItem(text, kind, bucket), correct, backtrack, reaction_ms)


def toy_session(records, age=9, label=None, session_id="toy"):
    return ReadingSession(session_id=session_id, age_years=age,
                          records=tuple(records), label=label)


class TestFeatureExtraction:
    def test_four_record_example(self):
        session = toy_session([
            record(WordKind.REAL, True, False, 500, "mast"),
            record(WordKind.REAL, False, True, 900, "crate"),
            record(WordKind.PSEUDO, True, False, 700, "blit"),
            record(WordKind.PSEUDO, False, True, 1100, "droun"),
        ], age=9)
        got = extract_dyslexia_features(session)
        np.testing.assert_allclose(
            got, [9, 0.5, 0.5, 800, 0.5, 0.5, 700, 0.5, 0.5, 900]
        )

    def test_all_correct_constant_time(self):
        records = [record(WordKind.REAL, True, False, 600, f"r{i:03d}") for i in range(16)]
        records += [record(WordKind.PSEUDO, True, False, 600, f"p{i:03d}") for i in range(16)]
        got = extract_dyslexia_features(toy_session(records, age=10))
        np.testing.assert_allclose(got, [10, 0, 0, 600, 0, 0, 600, 0, 0, 600])

    def test_all_wrong(self):
        records = [record(WordKind.REAL, False, False, 600, f"r{i:03d}") for i in range(16)]
        records += [record(WordKind.PSEUDO, False, False, 600, f"p{i:03d}") for i in range(16)]
        got = extract_dyslexia_features(toy_session(records))
        assert got[1] == got[4] == got[7] == 1.0

    def test_easy_real_counts_as_real(self):
        session = toy_session([
            record(WordKind.EASY_REAL, False, False, 100, "easy"),
            record(WordKind.REAL, True, False, 300, "mast"),
            record(WordKind.PSEUDO, True, False, 700, "blit"),
        ])
        got = extract_dyslexia_features(session)
        assert got[DYSLEXIA_FEATURE_NAMES.index("avg_error_real")] == 0.5
        assert got[DYSLEXIA_FEATURE_NAMES.index("avg_reaction_ms_real")] == 200

    def test_single_kind_session_rejected(self):
        session = toy_session([record(WordKind.REAL, True, False, 500)])
        with pytest.raises(SessionValidationError):
            extract_dyslexia_features(session)

    def test_permutation_invariant(self):
        rng = random.Random(0)
        records = [
            record(WordKind.REAL if i % 2 else WordKind.PSEUDO,
                   rng.random() < 0.5, rng.random() < 0.5,
                   rng.uniform(200, 2000), f"w{i:03d}")
            for i in range(32)
        ]
        base = extract_dyslexia_features(toy_session(records))
        rng.shuffle(records)
        np.testing.assert_allclose(extract_dyslexia_features(toy_session(records)), base)

    @given(st.lists(st.tuples(st.booleans(), st.booleans(), st.booleans(),
                              st.floats(0, 5000)), min_size=2, max_size=40))
    def test_weighted_mean_consistency(self, raw):
        # force at least one of each kind
        raw = [(True, True, False, 100.0), (False, False, True, 200.0)] + raw
        records = [
            record(WordKind.REAL if is_real else WordKind.PSEUDO, c, b, t, f"w{i:04d}")
            for i, (is_real, c, b, t) in enumerate(raw)
        ]
        v = dict(zip(DYSLEXIA_FEATURE_NAMES,
                     extract_dyslexia_features(toy_session(records))))
        n_real = sum(1 for r in records if r.word.kind.is_real)
        n_pseudo = len(records) - n_real
        n = len(records)
        for overall, real, pseudo in (
            ("avg_error", "avg_error_real", "avg_error_pseudo"),
            ("avg_backtrack", "avg_backtrack_real", "avg_backtrack_pseudo"),
            ("avg_reaction_ms", "avg_reaction_ms_real", "avg_reaction_ms_pseudo"),
        ):
            expected = (v[real] * n_real + v[pseudo] * n_pseudo) / n
            assert v[overall] == pytest.approx(expected, rel=1e-12, abs=1e-9)


class TestSessionDocuments:
    def test_round_trip(self, sample_bank, char_model, difficulty):
        wl = assemble_word_list(sample_bank, char_model, difficulty, 10, seed=31)
        doc = fill_session_doc(wl, label=True)
        session = session_from_doc(doc)
        assert session_to_doc(session) == doc
        assert session_from_doc(session_to_doc(session)) == session

    def test_wrong_schema_rejected(self):
        with pytest.raises(SchemaError):
            session_from_doc({"schema": "dys-session/2", "session_id": "x"})

    def test_negative_reaction_rejected(self, sample_bank, char_model, difficulty):
        wl = assemble_word_list(sample_bank, char_model, difficulty, 10, seed=31)
        doc = fill_session_doc(wl)
        doc["records"][3]["reaction_ms"] = -5.0
        with pytest.raises(SessionValidationError, match="negative"):
            session_from_doc(doc)

    def test_reaction_above_ceiling_clamped_with_warning(self, sample_bank,
                                                         char_model, difficulty):
        wl = assemble_word_list(sample_bank, char_model, difficulty, 10, seed=31)
        doc = fill_session_doc(wl)
        doc["records"][0]["reaction_ms"] = 61_000.0
        with pytest.warns(UserWarning, match="clamped"):
            session = session_from_doc(doc)
        assert session.records[0].reaction_ms == REACTION_CEILING_MS

    def test_age_below_six_rejected(self, sample_bank, char_model, difficulty):
        wl = assemble_word_list(sample_bank, char_model, difficulty, 10, seed=31)
        doc = fill_session_doc(wl)
        doc["age_years"] = 5
        with pytest.raises(SessionValidationError, match="age"):
            session_from_doc(doc)


class TestValidateSession:
    @pytest.fixture()
    def wordlist(self, sample_bank, char_model, difficulty):
        return assemble_word_list(sample_bank, char_model, difficulty, 10, seed=77)

    def test_well_formed(self, wordlist):
        session = validate_session(fill_session_doc(wordlist), wordlist)
        assert len(session.records) == 32

    def test_record_count_message(self, wordlist):
        doc = fill_session_doc(wordlist)
        doc["records"] = doc["records"][:31]
        with pytest.raises(SessionValidationError, match="expected 32 records, found 31"):
            validate_session(doc, wordlist)

    def test_word_set_mismatch_lists_offenders(self, wordlist):
        doc = fill_session_doc(wordlist)
        doc["records"][5]["text"] = "zzzz"
        with pytest.raises(SessionValidationError, match="zzzz"):
            validate_session(doc, wordlist)

    def test_out_of_range_reaction(self, wordlist):
        doc = fill_session_doc(wordlist)
        doc["records"][2]["reaction_ms"] = -1
        with pytest.raises(SessionValidationError):
            validate_session(doc, wordlist)


class TestHandwritingDocuments:
    def sample(self, label=None):
        return HandwritingSample("h-1", tuple([0.5] * 8), label)

    def test_round_trip(self):
        sample = HandwritingSample("h-2", (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8), True)
        doc = handwriting_to_doc(sample)
        assert handwriting_from_doc(doc) == sample
        assert handwriting_to_doc(handwriting_from_doc(doc)) == doc

    def test_rating_out_of_range(self):
        doc = handwriting_to_doc(self.sample())
        doc["ratings"]["slant"] = 1.5
        with pytest.raises(SessionValidationError, match="slant"):
            handwriting_from_doc(doc)

    def test_missing_rating_named(self):
        doc = handwriting_to_doc(self.sample())
        del doc["ratings"]["pressure"]
        with pytest.raises(SessionValidationError, match="pressure"):
            handwriting_from_doc(doc)

    def test_constructor_validates(self):
        with pytest.raises(ValueError):
            HandwritingSample("h", tuple([0.5] * 7))
        with pytest.raises(ValueError):
            HandwritingSample("h", tuple([0.5] * 7 + [1.1]))


class TestToDataset:
    def labeled_session(self, label, session_id="s"):
        records = [record(WordKind.REAL, True, False, 500, f"r{i:03d}") for i in range(16)]
        records += [record(WordKind.PSEUDO, True, False, 700, f"p{i:03d}") for i in range(16)]
        return toy_session(records, label=label, session_id=session_id)

    def test_sessions_dataset(self):
        ds = to_dataset([self.labeled_session(True, "a"), self.labeled_session(False, "b")])
        assert ds.feature_names == DYSLEXIA_FEATURE_NAMES
        assert ds.X.shape == (2, 10)
        assert list(ds.y) == [True, False]

    def test_handwriting_dataset(self):
        samples = [HandwritingSample(f"h{i}", tuple([0.5] * 8), bool(i % 2))
                   for i in range(3)]
        ds = to_dataset(samples)
        assert ds.feature_names == HANDWRITING_FEATURE_NAMES
        assert ds.X.shape == (3, 8)

    def test_unlabeled_named(self):
        with pytest.raises(SessionValidationError, match="nolabel"):
            to_dataset([self.labeled_session(True), self.labeled_session(None, "nolabel")])

    def test_unlabeled_sample_named(self):
        with pytest.raises(SessionValidationError, match="h-u"):
            to_dataset([HandwritingSample("h-u", tuple([0.5] * 8))])


class TestDatasetCsv:
    def test_round_trip(self, tmp_path):
        ds = Dataset(("a", "b"), np.array([[1.25, -3.5], [0.1, 2e-7]]),
                     np.array([True, False]))
        path = tmp_path / "data.csv"
        save_dataset_csv(ds, path)
        loaded = load_dataset_csv(path)
        assert loaded.feature_names == ds.feature_names
        np.testing.assert_array_equal(loaded.X, ds.X)
        np.testing.assert_array_equal(loaded.y, ds.y)

    def test_label_column_last_and_binary(self, tmp_path):
        ds = Dataset(("a",), np.array([[1.0], [2.0]]), np.array([True, False]))
        path = tmp_path / "data.csv"
        save_dataset_csv(ds, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "a,label"
        assert lines[1].endswith(",1") and lines[2].endswith(",0")

    def test_missing_label_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(SchemaError):
            load_dataset_csv(path)
