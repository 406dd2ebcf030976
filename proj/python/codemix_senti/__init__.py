"""Sentiment polarity classification for code-mixed social media posts."""

from ._core import (
    FEATURE_NAMES,
    Error,
    Model,
    Resources,
    ablate,
    cohen_kappa,
    evaluate,
    extract_features,
    featurize,
    kappa_from_file,
    metrics,
    normalize,
    reduce_repetitions,
    run_cli,
    train,
)

__all__ = [
    "FEATURE_NAMES",
    "Error",
    "Model",
    "Resources",
    "ablate",
    "cohen_kappa",
    "evaluate",
    "extract_features",
    "featurize",
    "kappa_from_file",
    "metrics",
    "normalize",
    "reduce_repetitions",
    "run_cli",
    "train",
]
