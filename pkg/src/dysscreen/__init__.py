"""Screening toolkit for dyslexia and dysgraphia.

Builds age-graded reading-assessment word lists from a text corpus,
featurizes reading sessions and handwriting ratings, trains classical
classifiers from scratch, and evaluates them with imbalance-aware,
stratified cross-validation.
"""

from .corpus import (
    LengthBucket,
    Token,
    WordBank,
    build_word_bank,
    fourgram_attested,
    load_word_bank,
    sample_corpus_dir,
    save_word_bank,
    tokenize_corpus,
    tokenize_directory,
)
from .evaluation import (
    CohortSpec,
    ConfusionCounts,
    EvaluationReport,
    FeatureSpec,
    Metrics,
    confusion,
    cross_validate,
    dysgraphia_cohort_spec,
    dyslexia_cohort_spec,
    format_confusion_ascii,
    format_report_table,
    group_comparison,
    make_cohort,
    metrics,
    stratified_kfold,
)
from .learners import (
    ModelKind,
    ModelSpec,
    Prediction,
    TrainedModel,
    fit,
    gini_impurity,
    load_model,
    logistic_loss_and_gradient,
    predict,
    save_model,
)
from .sessions import (
    DYSLEXIA_FEATURE_NAMES,
    HANDWRITING_FEATURE_NAMES,
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
from .wordgen import (
    AgeBand,
    CharModel,
    DifficultySet,
    WordItem,
    WordKind,
    WordList,
    assemble_word_list,
    band_for_age,
    default_difficulty,
    generate_pseudowords,
    is_admissible_pseudoword,
    load_word_list,
    save_word_list,
    train_char_model,
    word_list_from_doc,
    word_list_to_doc,
)

__version__ = "0.1.0"
