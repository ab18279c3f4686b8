"""Fuzzy-rough weighted least-squares twin SVM for imbalanced binary data."""

from ._frlstsvm import (
    MAJORITY,
    MINORITY,
    ConfigError,
    ConfusionMatrix,
    CvResult,
    DataError,
    Dataset,
    DimensionError,
    EmptySelectionError,
    Error,
    ExperimentConfig,
    FuzzyParams,
    Implicator,
    KernelSpec,
    KernelType,
    MetricConvention,
    Model,
    ParseError,
    ScoreMode,
    SolverForm,
    TNorm,
    TrainConfig,
    confusion,
    cv_result_jsonl,
    fit,
    imbalance_ratio,
    load_csv,
    load_keel,
    parse_config,
    positive_region_scores,
    report,
    run_cv,
    subsample_majority,
)

__version__ = "0.1.0"
