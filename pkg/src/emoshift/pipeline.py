"""The transfer pipeline: select positions, over-generate, score, rank.

A transfer run builds *selections* (sets of token positions to
substitute), retrieves candidate words for every selected position via
one of three strategies (lexical database, plain embedding similarity,
or emotion-informed embedding retrieval), expands each selection's full
Cartesian product of candidates into variations, scores every variation
under the three-term objective, and returns the ranked result.

Everything is deterministic: candidate lists are canonically ordered,
selections are enumerated by size then position, and ranking breaks
ties by emotion score and then by text.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .embeddings import EmbeddingStore, EmotionCentroids, informed_retrieve, mean_vector, nearest
from .emotions import EMOTIONS, check_emotion
from .errors import DataError
from .ngram import avg_neg_log_prob, transition_terms
from .scoring import (
    ObjectiveWeights,
    ScoreBreakdown,
    emo,
    flu,
    objective,
    salience,
    softmax,
)
from .text import POSLexicon, Sentence, pos_tag, tokenize
from .wndb import LexicalDb, candidates_for

log = logging.getLogger(__name__)

SELECTION_STRATEGIES = ("brute_force", "salient")
RETRIEVAL_STRATEGIES = ("wordnet", "uninformed", "informed")


@dataclass(frozen=True)
class Selection:
    """A non-empty set of token positions marked for substitution."""

    positions: tuple[int, ...]

    def __post_init__(self):
        if not self.positions:
            raise DataError("a selection needs at least one position")
        ordered = tuple(sorted(self.positions))
        if len(set(ordered)) != len(ordered):
            raise DataError("selection positions must be distinct")
        object.__setattr__(self, "positions", ordered)

    def __len__(self):
        return len(self.positions)


@dataclass(frozen=True)
class Variation:
    """One candidate paraphrase with its substitution provenance."""

    tokens: tuple[str, ...]
    selection: Selection | None
    substitutions: dict[int, tuple[str, str]] = field(default_factory=dict)
    scores: ScoreBreakdown | None = None

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    @property
    def is_identity(self) -> bool:
        return not self.substitutions


@dataclass(frozen=True)
class PipelineConfig:
    """Strategy choices and parameters for one transfer run."""

    selection: str = "salient"
    k: int = 2
    p: int = 2
    retrieval: str = "wordnet"
    u: int = 150
    v: int = 25
    weights: ObjectiveWeights = field(default_factory=ObjectiveWeights)
    max_variations: int = 50_000
    include_identity: bool = True
    include_multiword: bool = False

    def __post_init__(self):
        if self.selection not in SELECTION_STRATEGIES:
            raise DataError(f"unknown selection strategy {self.selection!r}")
        if self.retrieval not in RETRIEVAL_STRATEGIES:
            raise DataError(f"unknown retrieval strategy {self.retrieval!r}")
        if min(self.k, self.p, self.u, self.v, self.max_variations) < 1:
            raise DataError("pipeline parameters must be positive")
        if self.retrieval == "informed" and self.v > self.u:
            raise DataError(f"v ({self.v}) may not exceed u ({self.u})")


@dataclass
class Resources:
    """Read-only resource bundle shared by all pipeline stages."""

    store: EmbeddingStore
    lm: object
    scorer: object
    db: LexicalDb | None = None
    centroids: EmotionCentroids | None = None
    pos_lexicon: POSLexicon | None = None


def select_brute_force(sentence: Sentence) -> list[Selection]:
    """One singleton selection per token, in token order."""
    if len(sentence) < 1:
        raise DataError("cannot select from an empty sentence")
    return [Selection((i,)) for i in range(len(sentence))]


def select_salient(sentence: Sentence, weights, k: int, p: int) -> list[Selection]:
    """All non-empty subsets of size <= p of the k most salient positions.

    Salience ties go to the lower index. Selections are ordered by size,
    then by their position tuples, so the enumeration is deterministic.
    The result has sum(i=1..min(p,k)) C(k, i) entries.
    """
    n = len(sentence)
    if not 1 <= k <= n:
        raise DataError(f"k must be in [1, {n}], got {k}")
    if p < 1:
        raise DataError("p must be at least 1")
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (n,):
        raise DataError("need one salience weight per token")
    ranked = sorted(range(n), key=lambda i: (-weights[i], i))
    top = sorted(ranked[:k])
    selections = []
    for size in range(1, min(p, k) + 1):
        for combo in itertools.combinations(top, size):
            selections.append(Selection(combo))
    return selections


def _candidates(token, config: PipelineConfig, resources: Resources,
                target: str) -> list[str]:
    """Deterministically ordered substitution candidates for one token."""
    if config.retrieval == "wordnet":
        if resources.db is None:
            raise DataError("wordnet retrieval requires a lexical database")
        return candidates_for(
            resources.db, token.surface, token.pos,
            include_multiword=config.include_multiword,
        )
    if token.surface not in resources.store:
        return []
    if config.retrieval == "uninformed":
        return [w for w, _ in nearest(resources.store, token.surface, config.u)]
    if resources.centroids is None:
        raise DataError("informed retrieval requires emotion centroids")
    return [
        w for w, _ in informed_retrieve(
            resources.store, token.surface, target,
            resources.centroids, config.u, config.v,
        )
    ]


def generate_variations(
    sentence: Sentence,
    selections: list[Selection],
    config: PipelineConfig,
    resources: Resources,
    target: str,
) -> tuple[list[Variation], bool]:
    """Expand selections into candidate variations.

    For every selection the full Cartesian product of its positions'
    candidate lists is emitted, one variation per combination; a
    selection with any empty candidate list contributes nothing. The
    identity variation, when enabled, is placed first so the global
    ``max_variations`` cap can never drop it. Returns the variations
    and a flag saying whether the cap truncated the batch.
    """
    base = sentence.surfaces
    variations: list[Variation] = []
    if config.include_identity:
        variations.append(Variation(base, None, {}))

    cache: dict[int, list[str]] = {}
    for sel in selections:
        for pos in sel.positions:
            if pos not in cache:
                cache[pos] = _candidates(sentence.tokens[pos], config,
                                         resources, target)

    truncated = False
    for sel in selections:
        lists = [cache[pos] for pos in sel.positions]
        if any(not lst for lst in lists):
            continue
        for combo in itertools.product(*lists):
            tokens = list(base)
            subs = {}
            for pos, replacement in zip(sel.positions, combo):
                tokens[pos] = replacement
                subs[pos] = (base[pos], replacement)
            variations.append(Variation(tuple(tokens), sel, subs))
            if len(variations) >= config.max_variations:
                truncated = True
                break
        if truncated:
            break
    if truncated:
        log.warning(
            "variation cap %d reached; batch truncated deterministically",
            config.max_variations,
        )
    return variations, truncated


def _batch_ppl(lm, base_words, variations) -> list[float]:
    """Average negative log probability for every variation.

    Variations differ from the base sentence at a handful of positions,
    so only the transitions whose context window overlaps a substituted
    position are re-scored; the rest reuse the base sentence's terms.
    Matches a full recomputation up to float addition order.
    """
    n = len(base_words)
    base_terms = transition_terms(lm, base_words)
    base_sum = sum(base_terms)
    order = lm.order
    ppls = []
    for var in variations:
        if var.is_identity and var.tokens == tuple(base_words):
            ppls.append(base_sum / (n - 1))
            continue
        affected = set()
        for j in var.substitutions:
            for m in range(max(1, j), min(n - 1, j + order - 1) + 1):
                affected.add(m)
        total = base_sum
        words = var.tokens
        for m in affected:
            history = words[max(0, m - (order - 1)) : m]
            total += -math.log(lm.prob(words[m], history)) - base_terms[m - 1]
        ppls.append(total / (n - 1))
    return ppls


def _score_batch(sentence, variations, target, resources, weights):
    """Score a batch; returns (scored variations, ppl_min, ppl_max)."""
    store, scorer = resources.store, resources.scorer
    batch = [v.tokens for v in variations]

    if hasattr(scorer, "activations_many"):
        acts = np.asarray(scorer.activations_many(batch), dtype=np.float64)
    else:
        acts = np.vstack([scorer.activations(words) for words in batch])
    emo_scores = softmax(acts)[:, EMOTIONS.index(target)]

    base_vec = mean_vector(store, sentence.surfaces)
    if base_vec is None:
        raise DataError("the original sentence has no in-vocabulary token")
    base_norm = np.linalg.norm(base_vec)
    if base_norm == 0.0:
        raise DataError("the original sentence has a zero mean embedding")
    base_unit = base_vec / base_norm

    sims = np.zeros(len(batch))
    valid = np.zeros(len(batch), dtype=bool)
    for i, words in enumerate(batch):
        vec = mean_vector(store, words)
        if vec is None:
            continue
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            continue
        sims[i] = np.clip(np.dot(vec / norm, base_unit), -1.0, 1.0)
        valid[i] = True

    ppls = _batch_ppl(resources.lm, sentence.surfaces, variations)

    kept = [i for i in range(len(batch)) if valid[i]]
    if not kept:
        raise DataError("no variation in the batch could be scored")
    if len(kept) < len(batch):
        log.warning(
            "dropped %d variation(s) without in-vocabulary tokens",
            len(batch) - len(kept),
        )
    ppl_min = min(ppls[i] for i in kept)
    ppl_max = max(ppls[i] for i in kept)
    scored = []
    for i in kept:
        flu_score = flu(ppls[i], ppl_min, ppl_max)
        breakdown = objective(float(emo_scores[i]), float(sims[i]),
                              flu_score, weights)
        scored.append(replace(variations[i], scores=breakdown))
    return scored, ppl_min, ppl_max


def rank(
    sentence: Sentence,
    variations: list[Variation],
    target: str,
    resources: Resources,
    weights: ObjectiveWeights,
) -> list[Variation]:
    """Score a variation batch and sort it by descending total.

    Fluency is normalized over the whole batch. Ties are broken by
    higher emotion score, then lexicographically by text. Variations
    that cannot be scored (no in-vocabulary token for the similarity
    term) are dropped with a warning.
    """
    check_emotion(target)
    if not variations:
        raise DataError("cannot rank an empty variation batch")
    scored, _, _ = _score_batch(sentence, variations, target, resources, weights)
    scored.sort(key=lambda v: (-v.scores.total, -v.scores.emo, v.text))
    return scored


@dataclass
class TransferResult:
    """Outcome of one transfer call, with full provenance."""

    sentence: Sentence
    target: str
    variations: list[Variation]
    input_scores: ScoreBreakdown | None
    n_generated: int
    n_scored: int
    truncated: bool = False
    no_candidates: bool = False

    @property
    def best(self) -> Variation | None:
        return self.variations[0] if self.variations else None


def transfer(
    raw,
    target: str,
    config: PipelineConfig,
    resources: Resources,
    top_n: int = 10,
) -> TransferResult:
    """Run the full pipeline on one sentence.

    ``raw`` may be an untokenized string or a prepared Sentence (for
    pre-tagged input). When no variations are generated and the
    identity variation is disabled, an explicit no-candidates result is
    returned instead of an error. ``input_scores`` reports the original
    sentence's breakdown; its fluency is exact whenever the identity
    variation competes in the batch and is clamped into the batch range
    otherwise.
    """
    check_emotion(target)
    if isinstance(raw, Sentence):
        sentence = raw
    else:
        sentence = tokenize(raw)
        if resources.pos_lexicon is not None:
            sentence = pos_tag(sentence, resources.pos_lexicon)

    if config.selection == "brute_force":
        selections = select_brute_force(sentence)
    else:
        sal = salience(resources.scorer, sentence)
        k_eff = min(config.k, len(sentence))
        selections = select_salient(sentence, sal, k_eff, config.p)

    variations, truncated = generate_variations(
        sentence, selections, config, resources, target
    )
    n_identity = 1 if config.include_identity else 0
    n_generated = len(variations) - n_identity
    if n_generated == 0 and not config.include_identity:
        return TransferResult(
            sentence, target, [], None, 0, 0,
            truncated=truncated, no_candidates=True,
        )

    scored, ppl_min, ppl_max = _score_batch(
        sentence, variations, target, resources, config.weights
    )
    scored.sort(key=lambda v: (-v.scores.total, -v.scores.emo, v.text))

    if config.include_identity:
        input_scores = next(v.scores for v in scored if v.is_identity)
    else:
        emo_in = emo(resources.scorer, sentence.surfaces, target)
        ppl_in = avg_neg_log_prob(resources.lm, sentence)
        flu_in = flu(min(max(ppl_in, ppl_min), ppl_max), ppl_min, ppl_max)
        input_scores = objective(emo_in, 1.0, flu_in, config.weights)

    return TransferResult(
        sentence,
        target,
        scored[:top_n],
        input_scores,
        n_generated,
        len(scored),
        truncated=truncated,
    )
