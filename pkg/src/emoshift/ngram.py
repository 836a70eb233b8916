"""Count-based n-gram language model with add-k smoothing.

Used by the fluency term of the objective. The scored quantity is the
average negative natural log probability of a sentence's token
transitions; by convention this library calls it "perplexity" even
though it is not exponentiated (only its relative order matters after
the batch min-max normalization applied downstream).

Smoothing is add-k per order with optional linear interpolation across
orders. The default interpolation weights put all mass on the highest
order, which makes a seen context's distribution the plain add-k
estimate over the vocabulary; any weight vector keeps every conditional
distribution normalized, because each order's add-k estimate already
sums to one over the vocabulary.

Histories shorter than order-1 tokens (the first transitions of a
sentence) are scored by the deepest order that fits, with the weight of
inapplicable orders folded into it. Training sentences are padded with
order-1 start markers and one end marker; tokens seen fewer than
``min_count`` times train as the unknown marker, which also absorbs
out-of-vocabulary tokens at scoring time.
"""

from __future__ import annotations

import json
import math
from collections import Counter

from .errors import DataError, ResourceError

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"

SERIAL_FORMAT = "emoshift-ngram"
SERIAL_VERSION = 1


class NGramModel:
    """Immutable counts plus smoothing parameters.

    ``counts[o]`` maps an (o-1)-token context tuple to a Counter of
    continuation words; ``totals[o]`` caches each context's total count.
    """

    def __init__(self, order, k, counts, vocab, weights=None, min_count=2):
        if order < 2:
            raise DataError("model order must be at least 2")
        if k <= 0:
            raise DataError("smoothing constant k must be positive")
        self.order = order
        self.k = k
        self.counts = counts
        self.vocab = frozenset(vocab)
        self.min_count = min_count
        if weights is None:
            weights = tuple(0.0 for _ in range(order - 1)) + (1.0,)
        weights = tuple(float(w) for w in weights)
        if len(weights) != order or any(w < 0 for w in weights):
            raise DataError("need one non-negative weight per order")
        total = sum(weights)
        if total <= 0:
            raise DataError("interpolation weights must not all be zero")
        self.weights = tuple(w / total for w in weights)
        self.totals = {
            o: {ctx: sum(cont.values()) for ctx, cont in by_ctx.items()}
            for o, by_ctx in counts.items()
        }

    def _normalize_word(self, word: str) -> str:
        return word if word in self.vocab else UNK

    def _order_prob(self, o: int, context: tuple, word: str) -> float:
        cont = self.counts[o].get(context)
        count = cont.get(word, 0) if cont else 0
        total = self.totals[o].get(context, 0)
        return (count + self.k) / (total + self.k * len(self.vocab))

    def prob(self, word: str, history) -> float:
        """P(word | history), history being the preceding tokens.

        The history is truncated to the last order-1 tokens; shorter
        histories shift the weight of orders that do not fit onto the
        deepest order that does.
        """
        word = self._normalize_word(word)
        history = tuple(self._normalize_word(w) for w in history)
        avail = min(len(history), self.order - 1)
        context = history[len(history) - avail :]
        top = avail + 1  # deepest applicable order
        prob = 0.0
        for o in range(1, top + 1):
            weight = self.weights[o - 1]
            if o == top:
                weight += sum(self.weights[top:])
            if weight == 0.0:
                continue
            prob += weight * self._order_prob(o, context[avail - (o - 1) :], word)
        return prob


def train(corpus_path, order: int = 3, k: float = 0.01, *,
          min_count: int = 2, weights=None) -> NGramModel:
    """Train an n-gram model from a one-sentence-per-line text file.

    Tokens are split on whitespace and lowercased. Words seen fewer than
    ``min_count`` times are replaced by the unknown marker before
    counting (``min_count=1`` disables the replacement). Raises a
    ResourceError when the corpus is missing or contains no sentences.
    """
    if order < 2:
        raise DataError("model order must be at least 2")
    try:
        fh = open(corpus_path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open corpus: {exc}", path=corpus_path)
    with fh:
        sentences = [line.split() for line in fh if line.strip()]
    if not sentences:
        raise ResourceError("training corpus is empty", path=corpus_path)
    sentences = [[w.lower() for w in words] for words in sentences]

    freq = Counter(w for words in sentences for w in words)
    kept = {w for w, c in freq.items() if c >= min_count}
    vocab = kept | {BOS, EOS, UNK}

    counts = {o: {} for o in range(1, order + 1)}
    for words in sentences:
        stream = [BOS] * (order - 1) + [w if w in kept else UNK for w in words] + [EOS]
        for pos in range(order - 1, len(stream)):
            word = stream[pos]
            for o in range(1, order + 1):
                context = tuple(stream[pos - (o - 1) : pos])
                by_ctx = counts[o]
                cont = by_ctx.get(context)
                if cont is None:
                    cont = by_ctx[context] = Counter()
                cont[word] += 1
    return NGramModel(order, k, counts, vocab, weights=weights, min_count=min_count)


def transition_terms(model, words) -> list[float]:
    """Per-transition negative log probabilities of a token sequence.

    Term i is -ln P(words[i+1] | words[:i+1]); there are len(words)-1
    terms. Raises DataError for sequences shorter than two tokens.
    """
    words = list(getattr(words, "surfaces", words))
    if len(words) < 2:
        raise DataError(
            "need at least two tokens to score transitions, "
            f"got {len(words)}"
        )
    return [
        -math.log(model.prob(words[i + 1], words[: i + 1]))
        for i in range(len(words) - 1)
    ]


def avg_neg_log_prob(model, sentence) -> float:
    """Mean negative log probability over the sentence's transitions."""
    terms = transition_terms(model, sentence)
    return sum(terms) / len(terms)


def save_model(model: NGramModel, path) -> None:
    """Serialize a model to a versioned JSON text file.

    Context tuples are encoded as space-joined strings (markers contain
    no spaces, and training tokenization splits on whitespace, so the
    encoding is unambiguous).
    """
    payload = {
        "format": SERIAL_FORMAT,
        "version": SERIAL_VERSION,
        "order": model.order,
        "k": model.k,
        "min_count": model.min_count,
        "weights": list(model.weights),
        "vocab": sorted(model.vocab),
        "counts": {
            str(o): {
                " ".join(ctx): dict(sorted(cont.items()))
                for ctx, cont in sorted(by_ctx.items())
            }
            for o, by_ctx in model.counts.items()
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)


def load_model(path) -> NGramModel:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ResourceError(f"cannot open model file: {exc}", path=path)
    except json.JSONDecodeError as exc:
        raise ResourceError(f"model file is not valid JSON: {exc}", path=path)
    if payload.get("format") != SERIAL_FORMAT:
        raise ResourceError("not an n-gram model file", path=path)
    if payload.get("version") != SERIAL_VERSION:
        raise ResourceError(
            f"unsupported model version {payload.get('version')!r}", path=path
        )
    counts = {
        int(o): {
            tuple(ctx.split(" ")) if ctx else (): Counter(
                {w: int(c) for w, c in cont.items()}
            )
            for ctx, cont in by_ctx.items()
        }
        for o, by_ctx in payload["counts"].items()
    }
    return NGramModel(
        payload["order"],
        payload["k"],
        counts,
        payload["vocab"],
        weights=payload["weights"],
        min_count=payload["min_count"],
    )
