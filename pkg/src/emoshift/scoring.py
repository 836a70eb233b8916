"""The objective: emotion, similarity and fluency terms plus scorers.

A candidate paraphrase is scored by a weighted sum of three terms:

* emo: softmax probability of the target emotion under a pluggable
  scorer backend (any object with an ``activations(words)`` method
  returning a length-6 vector; empty input must map to the zero
  vector),
* sim: cosine similarity between mean token embeddings of the original
  and the paraphrase,
* flu: the paraphrase's average negative log probability, min-max
  normalized across the whole candidate batch and polarity-reversed so
  the most fluent candidate scores 1.

Two reference scorer backends ship with the library: a counting scorer
over an emotion lexicon (see emolex) and the linear softmax classifier
below, trained by full-batch gradient descent on mean word embeddings.
Per-token salience is measured by occlusion: how much the scorer's
softmax output moves when a token is removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

import numpy as np

from .embeddings import EmbeddingStore, mean_vector
from .emotions import EMOTIONS, check_emotion
from .errors import DataError, ResourceError

WEIGHT_TOLERANCE = 1e-9


@runtime_checkable
class EmotionScorer(Protocol):
    """Contract for emotion scorer backends."""

    def activations(self, words) -> np.ndarray:
        """Length-6 activation vector for a token sequence.

        Must return all-zero activations for an empty sequence so that
        occluding a single-token sentence is total.
        """
        ...


def softmax(activations: np.ndarray) -> np.ndarray:
    """Numerically stable softmax (max subtraction)."""
    a = np.asarray(activations, dtype=np.float64)
    shifted = a - a.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def emo(scorer: EmotionScorer, words, target: str) -> float:
    """Softmax probability of the target emotion under the scorer."""
    check_emotion(target)
    probs = softmax(scorer.activations(words))
    return float(probs[EMOTIONS.index(target)])


def sim(store: EmbeddingStore, original, paraphrase) -> float:
    """Cosine similarity of the two sentences' mean token embeddings."""
    vectors = []
    for label, sentence in (("original", original), ("paraphrase", paraphrase)):
        vec = mean_vector(store, getattr(sentence, "surfaces", sentence))
        if vec is None:
            raise DataError(
                f"the {label} sentence has no in-vocabulary token"
            )
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise DataError(
                f"the {label} sentence has a zero mean embedding"
            )
        vectors.append(vec / norm)
    r, r2 = vectors
    return float(np.clip(np.dot(r, r2), -1.0, 1.0))


def flu(ppl: float, ppl_min: float, ppl_max: float) -> float:
    """Min-max normalize a perplexity into [0, 1], most fluent = 1.

    The extremes must be taken over all candidates generated for one
    input sentence. A degenerate batch (all perplexities equal) scores
    1.0 everywhere.
    """
    if not ppl_min <= ppl <= ppl_max:
        raise DataError(
            f"perplexity {ppl} outside the batch range "
            f"[{ppl_min}, {ppl_max}]"
        )
    if ppl_min == ppl_max:
        return 1.0
    return (ppl - ppl_max) / (ppl_min - ppl_max)


@dataclass(frozen=True)
class ObjectiveWeights:
    """Non-negative term weights summing to one."""

    emo: float = 1.0 / 3.0
    sim: float = 1.0 / 3.0
    flu: float = 1.0 / 3.0

    def __post_init__(self):
        if min(self.emo, self.sim, self.flu) < 0:
            raise DataError("objective weights must be non-negative")
        total = self.emo + self.sim + self.flu
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise DataError(f"objective weights sum to {total}, expected 1")

    @classmethod
    def parse(cls, text: str) -> "ObjectiveWeights":
        try:
            parts = [float(x) for x in text.replace(",", " ").split()]
        except ValueError:
            raise DataError(f"cannot parse objective weights from {text!r}")
        if len(parts) != 3:
            raise DataError("objective weights need exactly three values")
        return cls(*parts)


EMO_ONLY = ObjectiveWeights(1.0, 0.0, 0.0)


@dataclass(frozen=True)
class ScoreBreakdown:
    emo: float
    sim: float
    flu: float
    total: float


def objective(
    emo_score: float, sim_score: float, flu_score: float,
    weights: ObjectiveWeights,
) -> ScoreBreakdown:
    """Combine the three terms into a weighted total."""
    total = (
        weights.emo * emo_score
        + weights.sim * sim_score
        + weights.flu * flu_score
    )
    return ScoreBreakdown(emo_score, sim_score, flu_score, total)


def salience(scorer: EmotionScorer, sentence) -> np.ndarray:
    """Occlusion-based token importance.

    The weight of token i is the L1 distance between the scorer's
    softmax output on the full sentence and on the sentence with token
    i removed. Deterministic and non-negative by construction.
    """
    words = list(getattr(sentence, "surfaces", sentence))
    if not words:
        raise DataError("cannot compute salience of an empty sentence")
    base = softmax(scorer.activations(words))
    weights = np.zeros(len(words), dtype=np.float64)
    for i in range(len(words)):
        occluded = softmax(scorer.activations(words[:i] + words[i + 1 :]))
        weights[i] = np.abs(base - occluded).sum()
    return weights


class LinearScorer:
    """Linear softmax classifier over mean word embeddings.

    activations(words) = W @ meanvec(words) + b, where meanvec is the
    mean of the in-vocabulary token vectors. Empty and all-OOV inputs
    yield the zero activation vector, per the scorer contract.
    """

    def __init__(self, weights: np.ndarray, bias: np.ndarray,
                 store: EmbeddingStore):
        weights = np.asarray(weights, dtype=np.float64)
        bias = np.asarray(bias, dtype=np.float64)
        if weights.shape != (len(EMOTIONS), store.dim):
            raise DataError(
                f"weight matrix must be {len(EMOTIONS)}x{store.dim}, "
                f"got {weights.shape}"
            )
        if bias.shape != (len(EMOTIONS),):
            raise DataError(f"bias must have length {len(EMOTIONS)}")
        self.weights = weights
        self.bias = bias
        self.store = store
        self.loss_history: list[float] = []

    def activations(self, words) -> np.ndarray:
        words = getattr(words, "surfaces", words)
        vec = mean_vector(self.store, words)
        if vec is None:
            return np.zeros(len(EMOTIONS), dtype=np.float64)
        return self.weights @ vec + self.bias


def features_and_labels(examples, store: EmbeddingStore):
    """Mean-embedding features and one-hot labels for a labeled corpus."""
    feats, labels = [], []
    for words, emotion in examples:
        check_emotion(emotion)
        words = getattr(words, "surfaces", words)
        vec = mean_vector(store, words)
        feats.append(np.zeros(store.dim) if vec is None else vec)
        labels.append(EMOTIONS.index(emotion))
    X = np.asarray(feats, dtype=np.float64)
    Y = np.zeros((len(labels), len(EMOTIONS)), dtype=np.float64)
    Y[np.arange(len(labels)), labels] = 1.0
    return X, Y


def loss_and_gradient(weights, bias, X, Y):
    """Mean cross-entropy and its analytic gradient at (weights, bias)."""
    logits = X @ weights.T + bias
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1))
    log_probs = shifted - log_norm[:, None]
    n = X.shape[0]
    loss = -float(np.sum(Y * log_probs)) / n
    delta = (np.exp(log_probs) - Y) / n
    grad_w = delta.T @ X
    grad_b = delta.sum(axis=0)
    return loss, grad_w, grad_b


def train_linear_scorer(
    examples, store: EmbeddingStore, epochs: int = 500,
    learning_rate: float = 0.5,
) -> LinearScorer:
    """Fit a LinearScorer by full-batch gradient descent.

    Weights start at zero, so training is deterministic without any
    seed; with zero epochs the scorer outputs the uniform softmax.
    Raises DataError when some emotion has no training example.
    """
    examples = list(examples)
    seen = {emotion for _, emotion in examples}
    missing = [e for e in EMOTIONS if e not in seen]
    if missing:
        raise DataError(
            f"no training example for emotion(s): {', '.join(missing)}"
        )
    X, Y = features_and_labels(examples, store)
    W = np.zeros((len(EMOTIONS), store.dim), dtype=np.float64)
    b = np.zeros(len(EMOTIONS), dtype=np.float64)
    history = []
    for _ in range(epochs):
        loss, grad_w, grad_b = loss_and_gradient(W, b, X, Y)
        history.append(loss)
        W = W - learning_rate * grad_w
        b = b - learning_rate * grad_b
    scorer = LinearScorer(W, b, store)
    scorer.loss_history = history
    return scorer


def save_linear_scorer(scorer: LinearScorer, path) -> None:
    """Write a scorer as a text matrix file.

    Line 1 holds ``dim n_emotions``; the next n_emotions lines are the
    weight matrix rows (one per emotion, canonical order); the final
    line is the bias vector.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{scorer.store.dim} {len(EMOTIONS)}\n")
        for row in scorer.weights:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")
        fh.write(" ".join(repr(float(x)) for x in scorer.bias) + "\n")


def load_linear_scorer(path, store: EmbeddingStore) -> LinearScorer:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [line.split() for line in fh if line.strip()]
    except OSError as exc:
        raise ResourceError(f"cannot open scorer file: {exc}", path=path)
    try:
        dim, n_emotions = int(lines[0][0]), int(lines[0][1])
        if n_emotions != len(EMOTIONS):
            raise ValueError(f"expected {len(EMOTIONS)} emotions")
        if dim != store.dim:
            raise ValueError(
                f"scorer dimension {dim} does not match store dimension "
                f"{store.dim}"
            )
        rows = [[float(x) for x in line] for line in lines[1:]]
        if len(rows) != n_emotions + 1:
            raise ValueError("wrong number of matrix rows")
        weights = np.asarray(rows[:n_emotions])
        bias = np.asarray(rows[n_emotions])
    except (ValueError, IndexError) as exc:
        raise ResourceError(f"malformed scorer file: {exc}", path=path)
    return LinearScorer(weights, bias, store)
