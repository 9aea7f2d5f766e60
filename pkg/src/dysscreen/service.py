"""HTTP service: word lists, session/sample intake, prediction endpoints.

Every endpoint reuses the core library operations; the service adds only
storage and transport.  Sessions and samples are stored append-only as JSON
files under the data directory, named by a content-hash prefix, which makes
resubmission idempotent.
"""

from __future__ import annotations

import hashlib
import json
import threading
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .config import AppConfig
from .corpus import load_word_bank
from .errors import DysscreenError, SchemaError, SessionValidationError, UnsupportedAgeError
from .learners import load_model, predict
from .sessions import (
    extract_dyslexia_features,
    handwriting_features,
    handwriting_from_doc,
    session_from_doc,
    validate_session,
)
from .wordgen import assemble_word_list, train_char_model, word_list_to_doc


def _store_doc(directory: Path, doc: dict, lock: threading.Lock) -> str:
    payload = json.dumps(doc, sort_keys=True)
    doc_id = hashlib.sha256(payload.encode()).hexdigest()[:12]
    path = directory / f"{doc_id}.json"
    with lock:
        if not path.exists():
            path.write_text(payload, encoding="utf-8")
    return doc_id


def _prediction_body(prediction) -> dict:
    return {
        "probability": prediction.probability,
        "label": prediction.label,
        "explanation": [
            {"feature": e.feature, "value": e.value, "note": e.note}
            for e in prediction.explanation
        ],
    }


def create_app(config: AppConfig) -> FastAPI:
    """Build the service; unreadable artifacts fail here, at startup."""
    if not config.bank_path:
        raise DysscreenError("serve requires a word bank (bank_path)")
    try:
        bank = load_word_bank(config.bank_path)
    except OSError as exc:
        raise DysscreenError(f"cannot load word bank {config.bank_path}: {exc}") from exc
    difficulty = config.difficulty_set()
    char_model = train_char_model(bank)

    models = {}
    for task, path in (("dyslexia", config.dyslexia_model_path),
                       ("dysgraphia", config.dysgraphia_model_path)):
        if path:
            try:
                models[task] = load_model(path)
            except OSError as exc:
                raise DysscreenError(f"cannot load {task} model {path}: {exc}") from exc

    data_dir = Path(config.data_dir)
    sessions_dir = data_dir / "sessions"
    samples_dir = data_dir / "samples"
    sessions_dir.mkdir(parents=True, exist_ok=True)
    samples_dir.mkdir(parents=True, exist_ok=True)
    write_lock = threading.Lock()

    app = FastAPI(title="dysscreen service")

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/wordlist")
    def get_wordlist(age: int, seed: int | None = None):
        if seed is None:
            seed = config.default_seed
        try:
            wordlist = assemble_word_list(bank, char_model, difficulty, age, seed)
        except UnsupportedAgeError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return word_list_to_doc(wordlist)

    @app.post("/api/sessions", status_code=201)
    def post_session(doc: dict = Body(...)):
        try:
            session = session_from_doc(doc)
            if session.wordlist_seed is None:
                raise SessionValidationError(
                    "wordlist_seed is required so the session can be validated"
                )
            wordlist = assemble_word_list(
                bank, char_model, difficulty, session.age_years, session.wordlist_seed
            )
            validate_session(doc, wordlist)
        except (SchemaError, SessionValidationError, DysscreenError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"id": _store_doc(sessions_dir, doc, write_lock)}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        path = sessions_dir / f"{session_id}.json"
        if not path.is_file():
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return json.loads(path.read_text(encoding="utf-8"))

    @app.post("/api/samples", status_code=201)
    def post_sample(doc: dict = Body(...)):
        try:
            handwriting_from_doc(doc)
        except (SchemaError, SessionValidationError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"id": _store_doc(samples_dir, doc, write_lock)}

    def _model_for(task: str):
        model = models.get(task)
        if model is None:
            raise HTTPException(status_code=503, detail=f"no {task} model configured")
        return model

    @app.post("/api/predict/dyslexia")
    def predict_dyslexia(doc: dict = Body(...)):
        model = _model_for("dyslexia")
        try:
            session = session_from_doc(doc)
            features = extract_dyslexia_features(session)
        except (SchemaError, SessionValidationError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _prediction_body(predict(model, features))

    @app.post("/api/predict/dysgraphia")
    def predict_dysgraphia(doc: dict = Body(...)):
        model = _model_for("dysgraphia")
        try:
            sample = handwriting_from_doc(doc)
        except (SchemaError, SessionValidationError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _prediction_body(predict(model, handwriting_features(sample)))

    if config.ui_dir:
        ui_dir = Path(config.ui_dir)
        if not ui_dir.is_dir():
            raise DysscreenError(f"ui_dir {config.ui_dir} is not a directory")
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
