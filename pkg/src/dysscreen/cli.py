"""Command-line interface tying the screening pipeline together."""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import corpus as corpus_mod
from .config import AppConfig, apply_overrides, load_config
from .errors import DysscreenError
from .evaluation import (
    cross_validate,
    dysgraphia_cohort_spec,
    dyslexia_cohort_spec,
    format_confusion_ascii,
    format_report_table,
    group_comparison,
    make_cohort,
)
from .learners import ModelKind, ModelSpec, fit, load_model, predict, save_model
from .sessions import (
    HANDWRITING_SCHEMA,
    SESSION_SCHEMA,
    extract_dyslexia_features,
    handwriting_features,
    handwriting_from_doc,
    load_dataset_csv,
    save_dataset_csv,
    session_from_doc,
    to_dataset,
    validate_session,
)
from .wordgen import (
    DEFAULT_ORDER,
    assemble_word_list,
    load_word_list,
    train_char_model,
    word_list_to_doc,
)

MODEL_CHOICES = [k.value for k in ModelKind]


def pipeline_command(fn):
    """Turn toolkit errors into exit code 1 with a diagnostic on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DysscreenError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _difficulty(letters: str, combinations: str):
    return AppConfig(
        difficulty_letters=letters, difficulty_combinations=combinations
    ).difficulty_set()


@click.group()
def main():
    """Dyslexia/dysgraphia screening toolkit."""


# ---------------------------------------------------------------------------
# bank

@main.group()
def bank():
    """Word-bank operations."""


@bank.command("build")
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False), help="Directory of .txt files.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--cap", default=corpus_mod.DEFAULT_BUCKET_CAP, show_default=True,
              help="Entries kept per length bucket.")
@click.option("--easy-count", default=corpus_mod.DEFAULT_EASY_COUNT, show_default=True)
@pipeline_command
def bank_build(corpus_dir, out_path, cap, easy_count):
    """Tokenize a corpus directory and write a .bank.json file."""
    tokens = corpus_mod.tokenize_directory(corpus_dir)
    word_bank = corpus_mod.build_word_bank(tokens, cap=cap, easy_count=easy_count)
    corpus_mod.save_word_bank(word_bank, out_path)
    click.echo(f"dictionary: {len(word_bank.dictionary)} words")
    click.echo(f"short bucket (4-6 letters): {len(word_bank.short_list)}")
    click.echo(f"long bucket (7-9 letters): {len(word_bank.long_list)}")
    click.echo(f"wrote {out_path}")


# ---------------------------------------------------------------------------
# wordlist

@main.group()
def wordlist():
    """Assessment word-list operations."""


@wordlist.command("gen")
@click.option("--bank", "bank_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--age", required=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Write here instead of stdout.")
@click.option("--order", default=DEFAULT_ORDER, show_default=True,
              help="Character-model context length.")
@click.option("--letters", default="bdpq", show_default=True, help="Difficult letters.")
@click.option("--combinations", default="ie,ei,ou,gh,th", show_default=True,
              help="Difficult letter combinations, comma separated.")
@pipeline_command
def wordlist_gen(bank_path, age, seed, out_path, order, letters, combinations):
    """Generate the 32-word list for an age and write .wordlist.json."""
    word_bank = corpus_mod.load_word_bank(bank_path)
    model = train_char_model(word_bank, order=order, seed=seed)
    wl = assemble_word_list(word_bank, model, _difficulty(letters, combinations), age, seed)
    doc = json.dumps(word_list_to_doc(wl), indent=1)
    if out_path:
        Path(out_path).write_text(doc + "\n", encoding="utf-8")
        pseudo = sum(1 for item in wl.items if item.kind.value == "Pseudo")
        click.echo(f"wrote {out_path} ({wl.age_band.value}, {len(wl.items)} items, "
                   f"{len(wl.items) - pseudo} real / {pseudo} pseudo)")
    else:
        click.echo(doc)


# ---------------------------------------------------------------------------
# session

@main.group()
def session():
    """Reading-session file operations."""


@session.command("validate")
@click.option("--file", "session_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--wordlist", "wordlist_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@pipeline_command
def session_validate(session_path, wordlist_path):
    """Validate a session document against its word list."""
    raw = json.loads(Path(session_path).read_text(encoding="utf-8"))
    wl = load_word_list(wordlist_path)
    checked = validate_session(raw, wl)
    click.echo(f"OK: session {checked.session_id}, {len(checked.records)} records")


# ---------------------------------------------------------------------------
# features

@main.group()
def features():
    """Featurization."""


@features.command("extract")
@click.argument("documents", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@pipeline_command
def features_extract(documents, out_path):
    """Extract features from labeled session/handwriting JSON into CSV."""
    docs = [json.loads(Path(p).read_text(encoding="utf-8")) for p in documents]
    schemas = {d.get("schema") for d in docs}
    if schemas == {SESSION_SCHEMA}:
        items = [session_from_doc(d) for d in docs]
    elif schemas == {HANDWRITING_SCHEMA}:
        items = [handwriting_from_doc(d) for d in docs]
    else:
        raise click.ClickException(
            f"documents must all share one schema ({SESSION_SCHEMA} or "
            f"{HANDWRITING_SCHEMA}), got {sorted(map(str, schemas))}"
        )
    dataset = to_dataset(items)
    save_dataset_csv(dataset, out_path)
    click.echo(f"wrote {out_path}: {len(dataset)} rows x {len(dataset.feature_names)} features")


# ---------------------------------------------------------------------------
# train / predict

def _spec_from_flags(model, seed, lr, iterations, l2, trees, max_depth, min_leaf,
                     features_per_split, bootstrap) -> ModelSpec:
    return ModelSpec(
        kind=ModelKind(model),
        seed=seed,
        learning_rate=lr,
        iterations=iterations,
        l2=l2,
        n_trees=trees,
        max_depth=max_depth,
        min_leaf=min_leaf,
        features_per_split=features_per_split,
        bootstrap=bootstrap,
    )


def _model_options(fn):
    options = [
        click.option("--seed", default=0, show_default=True, type=int),
        click.option("--lr", default=0.05, show_default=True, help="Logistic learning rate."),
        click.option("--iterations", default=2000, show_default=True),
        click.option("--l2", default=1e-3, show_default=True),
        click.option("--trees", default=100, show_default=True, help="Forest size."),
        click.option("--max-depth", default=None, type=int),
        click.option("--min-leaf", default=1, show_default=True),
        click.option("--features-per-split", default=None, type=int,
                     help="Default: ceil(sqrt(n_features))."),
        click.option("--bootstrap/--no-bootstrap", default=True, show_default=True),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@main.command("train")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--model", "model", required=True, type=click.Choice(MODEL_CHOICES))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@_model_options
@pipeline_command
def train_cmd(data_path, model, out_path, **flags):
    """Fit a classifier on a feature CSV and write a .model.json file."""
    dataset = load_dataset_csv(data_path)
    spec = _spec_from_flags(model, **flags)
    trained = fit(spec, dataset)
    save_model(trained, out_path)
    click.echo(f"wrote {out_path} ({spec.kind.value} on {len(dataset)} rows, "
               f"{dataset.positive_count} positive)")


@main.command("predict")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@pipeline_command
def predict_cmd(model_path, input_path):
    """Predict one session/handwriting document; print probability + explanation."""
    model = load_model(model_path)
    doc = json.loads(Path(input_path).read_text(encoding="utf-8"))
    schema = doc.get("schema")
    if schema == SESSION_SCHEMA:
        x = extract_dyslexia_features(session_from_doc(doc))
    elif schema == HANDWRITING_SCHEMA:
        x = handwriting_features(handwriting_from_doc(doc))
    else:
        raise click.ClickException(f"unrecognized document schema {schema!r}")
    result = predict(model, x)
    click.echo(json.dumps({
        "probability": result.probability,
        "label": result.label,
        "explanation": [
            {"feature": e.feature, "value": e.value, "note": e.note}
            for e in result.explanation
        ],
    }, indent=1))


# ---------------------------------------------------------------------------
# eval

@main.group(name="eval")
def eval_group():
    """Evaluation."""


@eval_group.command("cv")
@click.option("--task", type=click.Choice(["dyslexia", "dysgraphia"]), default=None,
              help="Label for the report header.")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--model", "model", default="all", show_default=True,
              help="Model kind, comma-separated kinds, or 'all'.")
@click.option("--k", default=5, show_default=True, type=int)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")
@click.option("--confusion", "show_confusion", is_flag=True,
              help="Also print the summed confusion matrix per model.")
@_model_options
@pipeline_command
def eval_cv(task, data_path, model, k, as_json, show_confusion, **flags):
    """Cross-validate models on a feature CSV; print a mean [sd] table.

    The --seed flag seeds both the fold shuffle and the models.
    """
    dataset = load_dataset_csv(data_path)
    if model == "all":
        kinds = MODEL_CHOICES
    else:
        kinds = [m.strip() for m in model.split(",") if m.strip()]
        unknown = [m for m in kinds if m not in MODEL_CHOICES]
        if unknown:
            raise click.ClickException(
                f"unknown model kind(s) {unknown}; choose from {MODEL_CHOICES} or 'all'"
            )
    seed = flags["seed"]
    reports = [cross_validate(_spec_from_flags(kind, **flags), dataset, k, seed)
               for kind in kinds]
    if as_json:
        click.echo(json.dumps([r.to_dict() for r in reports], indent=1))
        return
    if task:
        click.echo(f"task: {task} ({k}-fold cross-validation, seed {seed}, "
                   f"{len(dataset)} rows, {dataset.positive_count} positive)")
    click.echo(format_report_table(reports), nl=False)
    if show_confusion:
        for report in reports:
            click.echo(f"\n{report.display_name} summed confusion:")
            click.echo(format_confusion_ascii(report.confusion_total), nl=False)


# ---------------------------------------------------------------------------
# report

@main.group()
def report():
    """Comparison reports."""


@report.command("compare")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Write CSV here instead of stdout.")
@pipeline_command
def report_compare(data_path, out_path):
    """Class x word-kind breakdown of error rate and reading time (CSV)."""
    table = group_comparison(load_dataset_csv(data_path))
    if out_path:
        Path(out_path).write_text(table.to_csv(), encoding="utf-8")
        click.echo(f"wrote {out_path}")
    else:
        click.echo(table.to_csv(), nl=False)


# ---------------------------------------------------------------------------
# cohort

@main.group()
def cohort():
    """Synthetic cohorts."""


@cohort.command("make")
@click.option("--task", required=True, type=click.Choice(["dyslexia", "dysgraphia"]))
@click.option("--n", "n_total", default=500, show_default=True, type=int)
@click.option("--positive-fraction", default=0.13, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@pipeline_command
def cohort_make(task, n_total, positive_fraction, seed, out_path):
    """Generate a seeded synthetic cohort CSV for end-to-end testing."""
    maker = dyslexia_cohort_spec if task == "dyslexia" else dysgraphia_cohort_spec
    try:
        spec = maker(n_total=n_total, positive_fraction=positive_fraction, seed=seed)
        dataset = make_cohort(spec)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    save_dataset_csv(dataset, out_path)
    click.echo(f"wrote {out_path}: {len(dataset)} rows, {dataset.positive_count} positive")


# ---------------------------------------------------------------------------
# serve

@main.command("serve")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="Overrides the config file.")
@click.option("--bank", "bank_path", type=click.Path(dir_okay=False), default=None)
@click.option("--data-dir", default=None)
@click.option("--dyslexia-model", "dyslexia_model_path", default=None)
@click.option("--dysgraphia-model", "dysgraphia_model_path", default=None)
@click.option("--ui-dir", default=None)
@pipeline_command
def serve_cmd(config_path, host, port, bank_path, data_dir,
              dyslexia_model_path, dysgraphia_model_path, ui_dir):
    """Run the HTTP service (and the assessment UI, when ui_dir is set)."""
    config = load_config(config_path) if config_path else AppConfig()
    config = apply_overrides(
        config,
        port=port,
        bank_path=bank_path,
        data_dir=data_dir,
        dyslexia_model_path=dyslexia_model_path,
        dysgraphia_model_path=dysgraphia_model_path,
        ui_dir=ui_dir,
    )
    from .service import create_app  # deferred: uvicorn/fastapi only needed here
    app = create_app(config)
    import uvicorn

    uvicorn.run(app, host=host, port=config.port)


if __name__ == "__main__":
    sys.exit(main())
