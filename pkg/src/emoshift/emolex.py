"""Word-emotion association lexicon: parsing, term sets, centroids.

Reads flat files of ``term<TAB>category<TAB>{0|1}`` associations (the
layout used by the NRC word-emotion lexicon), keeping only the six
emotion categories this library targets. Association sets drive two
things: emotion centroids in an embedding space, and a simple counting
scorer that serves as the fallback emotion classifier.
"""

from __future__ import annotations

import numpy as np

from .embeddings import EmbeddingStore, EmotionCentroids, centroid
from .emotions import EMOTIONS, check_emotion
from .errors import DataError, ResourceError


class EmotionLexicon:
    """Binary (term, emotion) association table over the six emotions."""

    def __init__(self, associations: dict[tuple[str, str], int] | None = None):
        self.associations = dict(associations or {})
        self._terms: dict[str, set[str]] = {}
        for (term, emotion), flag in self.associations.items():
            if flag == 1:
                self._terms.setdefault(emotion, set()).add(term)

    @property
    def terms(self) -> set[str]:
        return {term for term, _ in self.associations}

    def flag(self, term: str, emotion: str) -> int:
        return self.associations.get((term, emotion), 0)

    def terms_for(self, emotion: str) -> set[str]:
        return set(self._terms.get(emotion, set()))

    def __len__(self):
        return len(self.terms)


def load_nrc(path) -> EmotionLexicon:
    """Parse an NRC-format association file.

    Categories outside the six target emotions (valence polarities and
    the like) are dropped. Raises ResourceError on lines that do not
    split into three tab-separated fields, on association values other
    than 0 or 1, and on terms containing whitespace.
    """
    associations: dict[tuple[str, str], int] = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open lexicon file: {exc}", path=path)
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ResourceError(
                    "expected 'term<TAB>category<TAB>value'",
                    path=path,
                    line=lineno,
                )
            term, category, raw_value = (p.strip() for p in parts)
            if not term or " " in term:
                raise ResourceError(
                    f"bad lexicon term {term!r}", path=path, line=lineno
                )
            if raw_value not in ("0", "1"):
                raise ResourceError(
                    f"association value {raw_value!r} out of range {{0,1}}",
                    path=path,
                    line=lineno,
                )
            category = category.lower()
            if category not in EMOTIONS:
                continue
            associations[(term.lower(), category)] = int(raw_value)
    return EmotionLexicon(associations)


def emotion_terms(lexicon: EmotionLexicon, emotion: str) -> set[str]:
    """All terms flagged 1 for the given emotion."""
    check_emotion(emotion)
    return lexicon.terms_for(emotion)


def build_centroids(
    lexicon: EmotionLexicon, store: EmbeddingStore
) -> EmotionCentroids:
    """Mean embedding of each emotion's flagged terms.

    Raises DataError naming the emotion when none of its terms are in
    the embedding vocabulary.
    """
    vectors = {}
    for emotion in EMOTIONS:
        terms = emotion_terms(lexicon, emotion)
        if not terms:
            raise DataError(f"lexicon has no terms for emotion {emotion!r}")
        try:
            vectors[emotion] = centroid(store, sorted(terms))
        except DataError:
            raise DataError(
                f"no in-vocabulary terms for emotion {emotion!r}"
            )
    return EmotionCentroids(vectors)


def lexicon_activations(lexicon: EmotionLexicon, words) -> np.ndarray:
    """Per-emotion counts of flagged tokens; all-zero is allowed."""
    words = getattr(words, "surfaces", words)
    counts = np.zeros(len(EMOTIONS), dtype=np.float64)
    for i, emotion in enumerate(EMOTIONS):
        flagged = lexicon.terms_for(emotion)
        counts[i] = sum(1 for w in words if w in flagged)
    return counts


class LexiconScorer:
    """Scorer backend that counts lexicon hits per emotion.

    Satisfies the emotion scorer contract used by the objective: it maps
    a token sequence to a length-6 activation vector (the softmax over
    which becomes the emotion probability).
    """

    def __init__(self, lexicon: EmotionLexicon):
        self.lexicon = lexicon
        # word -> tuple of emotion indices it is flagged for
        self._hits: dict[str, tuple[int, ...]] = {}
        for i, emotion in enumerate(EMOTIONS):
            for term in lexicon.terms_for(emotion):
                self._hits[term] = self._hits.get(term, ()) + (i,)

    def activations(self, words) -> np.ndarray:
        words = getattr(words, "surfaces", words)
        counts = np.zeros(len(EMOTIONS), dtype=np.float64)
        hits = self._hits
        for w in words:
            for i in hits.get(w, ()):
                counts[i] += 1
        return counts

    def activations_many(self, batches) -> np.ndarray:
        out = np.zeros((len(batches), len(EMOTIONS)), dtype=np.float64)
        hits = self._hits
        for row, words in enumerate(batches):
            words = getattr(words, "surfaces", words)
            for w in words:
                for i in hits.get(w, ()):
                    out[row, i] += 1
        return out
