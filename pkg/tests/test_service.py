import json

import pytest
from fastapi.testclient import TestClient

from dysscreen.config import AppConfig, apply_overrides, load_config
from dysscreen.errors import DysscreenError
from dysscreen.evaluation import dysgraphia_cohort_spec, dyslexia_cohort_spec, make_cohort
from dysscreen.learners import ModelKind, ModelSpec, fit, save_model
from dysscreen.corpus import save_word_bank
from dysscreen.service import create_app
from dysscreen.wordgen import WordKind, word_list_from_doc

from conftest import fill_session_doc


@pytest.fixture(scope="module")
def service_env(tmp_path_factory, sample_bank):
    root = tmp_path_factory.mktemp("service")
    bank_path = root / "sample.bank.json"
    save_word_bank(sample_bank, bank_path)

    dys_model = fit(ModelSpec(ModelKind.RANDOM_FOREST, seed=1, n_trees=20),
                    make_cohort(dyslexia_cohort_spec(n_total=200, seed=1)))
    save_model(dys_model, root / "dyslexia.model.json")
    hand_model = fit(ModelSpec(ModelKind.RANDOM_FOREST, seed=2, n_trees=20),
                     make_cohort(dysgraphia_cohort_spec(n_total=200, seed=2)))
    save_model(hand_model, root / "dysgraphia.model.json")

    config = AppConfig(
        bank_path=str(bank_path),
        dyslexia_model_path=str(root / "dyslexia.model.json"),
        dysgraphia_model_path=str(root / "dysgraphia.model.json"),
        data_dir=str(root / "store"),
    )
    return config


@pytest.fixture(scope="module")
def client(service_env):
    return TestClient(create_app(service_env))


def hand_doc(sample_id="h-api", **overrides):
    ratings = {
        "slant": 0.4, "pressure": 0.7, "amplitude": 0.7, "letter_spacing": 0.6,
        "word_spacing": 0.7, "slant_regularity": 0.2, "size_regularity": 0.2,
        "horizontal_regularity": 0.3,
    }
    ratings.update(overrides)
    return {"schema": "dys-hand/1", "sample_id": sample_id, "ratings": ratings}


class TestEndpoints:
    def test_health(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}

    def test_wordlist_band2(self, client):
        response = client.get("/api/wordlist", params={"age": 10, "seed": 5})
        assert response.status_code == 200
        wl = word_list_from_doc(response.json())
        assert wl.age_band.value == "Band2"
        kinds = [i.kind for i in wl.items]
        assert kinds.count(WordKind.PSEUDO) == 15

    def test_wordlist_deterministic(self, client):
        a = client.get("/api/wordlist", params={"age": 10, "seed": 5}).json()
        b = client.get("/api/wordlist", params={"age": 10, "seed": 5}).json()
        assert a == b

    def test_wordlist_bad_age(self, client):
        response = client.get("/api/wordlist", params={"age": 3, "seed": 1})
        assert response.status_code == 422

    def test_session_round_trip(self, client):
        wl = word_list_from_doc(client.get(
            "/api/wordlist", params={"age": 10, "seed": 31}).json())
        doc = fill_session_doc(wl, session_id="api-s1")
        response = client.post("/api/sessions", json=doc)
        assert response.status_code == 201, response.text
        stored_id = response.json()["id"]
        fetched = client.get(f"/api/sessions/{stored_id}")
        assert fetched.status_code == 200
        assert fetched.json() == doc

    def test_session_resubmission_idempotent(self, client):
        wl = word_list_from_doc(client.get(
            "/api/wordlist", params={"age": 10, "seed": 32}).json())
        doc = fill_session_doc(wl, session_id="api-s2")
        first = client.post("/api/sessions", json=doc).json()["id"]
        second = client.post("/api/sessions", json=doc).json()["id"]
        assert first == second

    def test_invalid_session_is_422_with_details(self, client):
        wl = word_list_from_doc(client.get(
            "/api/wordlist", params={"age": 10, "seed": 33}).json())
        doc = fill_session_doc(wl, session_id="api-bad")
        doc["records"] = doc["records"][:31]
        response = client.post("/api/sessions", json=doc)
        assert response.status_code == 422
        assert "expected 32 records" in response.json()["detail"]

    def test_session_wrong_words_rejected(self, client):
        wl = word_list_from_doc(client.get(
            "/api/wordlist", params={"age": 10, "seed": 34}).json())
        doc = fill_session_doc(wl, session_id="api-bad2")
        doc["records"][0]["text"] = "zzzz"
        response = client.post("/api/sessions", json=doc)
        assert response.status_code == 422

    def test_missing_session_404(self, client):
        assert client.get("/api/sessions/doesnotexist").status_code == 404

    def test_sample_intake(self, client):
        response = client.post("/api/samples", json=hand_doc())
        assert response.status_code == 201
        assert response.json()["id"]

    def test_sample_bad_rating_422(self, client):
        response = client.post("/api/samples", json=hand_doc(slant=2.0))
        assert response.status_code == 422

    def test_predict_dysgraphia(self, client):
        response = client.post("/api/predict/dysgraphia", json=hand_doc())
        assert response.status_code == 200
        payload = response.json()
        assert set(payload) == {"probability", "label", "explanation"}
        assert 0.0 <= payload["probability"] <= 1.0
        assert len(payload["explanation"]) == 8
        assert payload["label"] == (payload["probability"] >= 0.5)

    def test_predict_dysgraphia_deterministic(self, client):
        a = client.post("/api/predict/dysgraphia", json=hand_doc()).json()
        b = client.post("/api/predict/dysgraphia", json=hand_doc()).json()
        assert a == b

    def test_predict_dyslexia(self, client):
        wl = word_list_from_doc(client.get(
            "/api/wordlist", params={"age": 10, "seed": 35}).json())
        doc = fill_session_doc(wl, session_id="api-p1")
        response = client.post("/api/predict/dyslexia", json=doc)
        assert response.status_code == 200
        payload = response.json()
        assert len(payload["explanation"]) == 10
        assert payload["explanation"][0]["feature"] == "age_years"

    def test_predict_dyslexia_bad_doc_422(self, client):
        response = client.post("/api/predict/dyslexia", json={"schema": "nope"})
        assert response.status_code == 422


class TestServiceConfig:
    def test_missing_bank_fails_at_startup(self, tmp_path):
        with pytest.raises(DysscreenError, match="bank"):
            create_app(AppConfig(bank_path=str(tmp_path / "missing.bank.json"),
                                 data_dir=str(tmp_path)))

    def test_no_model_gives_503(self, tmp_path, sample_bank):
        bank_path = tmp_path / "b.bank.json"
        save_word_bank(sample_bank, bank_path)
        app = create_app(AppConfig(bank_path=str(bank_path), data_dir=str(tmp_path)))
        client = TestClient(app)
        assert client.post("/api/predict/dysgraphia", json=hand_doc()).status_code == 503

    def test_config_file_and_overrides(self, tmp_path):
        config_path = tmp_path / "app.conf"
        config_path.write_text(
            "# service settings\n"
            'bank_path = "bank.json"\n'
            "port = 9001\n"
            "default_seed = 7\n"
        )
        config = load_config(config_path)
        assert config.bank_path == "bank.json"
        assert config.port == 9001
        assert config.default_seed == 7
        overridden = apply_overrides(config, port=9002, bank_path=None)
        assert overridden.port == 9002
        assert overridden.bank_path == "bank.json"  # None does not override

    def test_bad_port_rejected(self):
        with pytest.raises(DysscreenError, match="port"):
            AppConfig(port=0)

    def test_unknown_config_key_rejected(self, tmp_path):
        config_path = tmp_path / "bad.conf"
        config_path.write_text("nonsense = 1\n")
        with pytest.raises(DysscreenError, match="nonsense"):
            load_config(config_path)

    def test_ui_static_mount(self, tmp_path, sample_bank):
        bank_path = tmp_path / "b.bank.json"
        save_word_bank(sample_bank, bank_path)
        ui_dir = tmp_path / "ui"
        ui_dir.mkdir()
        (ui_dir / "index.html").write_text("<html><body>assessment</body></html>")
        app = create_app(AppConfig(bank_path=str(bank_path),
                                   data_dir=str(tmp_path / "store"),
                                   ui_dir=str(ui_dir)))
        client = TestClient(app)
        response = client.get("/")
        assert response.status_code == 200
        assert "assessment" in response.text
        # the API still wins over the static mount
        assert client.get("/api/health").status_code == 200
