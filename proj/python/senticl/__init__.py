"""Curriculum-learning experiments for SST-5 sentiment classification.

The heavy lifting lives in the compiled :mod:`senticl._core` extension:
SentiWordNet parsing, lexicon feature extraction, the auxiliary difficulty
model, curriculum ranking/scheduling, and seeded training runs.
"""

from senticl._core import (
    Dataset,
    DataError,
    Example,
    SentimentLexicon,
    WordScore,
    feature_matrix,
    gradcheck_aux,
    gradcheck_cnn,
    load_lexicon,
    load_sst_dir,
    load_tsv_dataset,
    make_schedule,
    normalized_feature_matrix,
    parse_tree,
    rank_by_score,
    rank_shuffled,
    run_comparison,
    run_single,
)

__all__ = [
    "Dataset",
    "DataError",
    "Example",
    "SentimentLexicon",
    "WordScore",
    "feature_matrix",
    "gradcheck_aux",
    "gradcheck_cnn",
    "load_lexicon",
    "load_sst_dir",
    "load_tsv_dataset",
    "make_schedule",
    "normalized_feature_matrix",
    "parse_tree",
    "rank_by_score",
    "rank_shuffled",
    "run_comparison",
    "run_single",
]

__version__ = "0.1.0"
