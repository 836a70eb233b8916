"""Emotion style transfer for single sentences via lexical substitution.

The pipeline rewrites a sentence towards one of six target emotions by
(1) selecting token positions worth substituting, (2) over-generating
candidate paraphrases from lexical or distributional substitution
candidates, and (3) ranking the candidates under a weighted objective
that balances target-emotion probability, similarity to the original,
and fluency.
"""

from .config import PRESETS, RunConfig, load_resources
from .embeddings import (
    EmbeddingStore,
    EmotionCentroids,
    centroid,
    informed_retrieve,
    informed_score,
    load_embeddings,
    nearest,
)
from .emolex import (
    EmotionLexicon,
    LexiconScorer,
    build_centroids,
    emotion_terms,
    lexicon_activations,
    load_nrc,
)
from .emotions import EMOTIONS
from .errors import DataError, EmoshiftError, ResourceError
from .evaluate import (
    EvalReport,
    bws_pack,
    bws_score,
    evaluate_batch,
    run_challenge_suite,
    spearman,
)
from .ngram import NGramModel, avg_neg_log_prob
from .ngram import train as train_ngram
from .pipeline import (
    PipelineConfig,
    Resources,
    Selection,
    TransferResult,
    Variation,
    generate_variations,
    rank,
    select_brute_force,
    select_salient,
    transfer,
)
from .scoring import (
    LinearScorer,
    ObjectiveWeights,
    ScoreBreakdown,
    emo,
    flu,
    objective,
    salience,
    sim,
    train_linear_scorer,
)
from .text import POSLexicon, Sentence, Token, pos_tag, tokenize
from .wndb import LexicalDb, candidates_for, load_wndb

__version__ = "0.1.0"

__all__ = [
    "EMOTIONS",
    "DataError",
    "EmbeddingStore",
    "EmoshiftError",
    "EmotionCentroids",
    "EmotionLexicon",
    "EvalReport",
    "LexicalDb",
    "LexiconScorer",
    "LinearScorer",
    "NGramModel",
    "ObjectiveWeights",
    "PRESETS",
    "PipelineConfig",
    "POSLexicon",
    "Resources",
    "ResourceError",
    "RunConfig",
    "ScoreBreakdown",
    "Selection",
    "Sentence",
    "Token",
    "TransferResult",
    "Variation",
    "avg_neg_log_prob",
    "build_centroids",
    "bws_pack",
    "bws_score",
    "candidates_for",
    "centroid",
    "emo",
    "emotion_terms",
    "evaluate_batch",
    "flu",
    "generate_variations",
    "informed_retrieve",
    "informed_score",
    "lexicon_activations",
    "load_embeddings",
    "load_nrc",
    "load_resources",
    "load_wndb",
    "nearest",
    "objective",
    "pos_tag",
    "rank",
    "run_challenge_suite",
    "salience",
    "select_brute_force",
    "select_salient",
    "sim",
    "spearman",
    "tokenize",
    "train_linear_scorer",
    "train_ngram",
    "transfer",
]
