"""Proposition segmentation and entailment evaluation toolkit."""

from ._propseg import (
    AlignmentError,
    EmptyHypothesisError,
    InvariantError,
    MalformedRatingsError,
    ParseError,
    TokenDriftError,
    canonical_order,
    decode,
    encode,
    fleiss_kappa,
    hallucinated_spans,
    jaccard,
    length_buckets,
    match_sets,
    score_entailment_files,
    score_labels,
    score_segmentation_files,
)

__all__ = [
    "AlignmentError",
    "EmptyHypothesisError",
    "InvariantError",
    "MalformedRatingsError",
    "ParseError",
    "TokenDriftError",
    "canonical_order",
    "decode",
    "encode",
    "fleiss_kappa",
    "hallucinated_spans",
    "jaccard",
    "length_buckets",
    "match_sets",
    "score_entailment_files",
    "score_labels",
    "score_segmentation_files",
]
