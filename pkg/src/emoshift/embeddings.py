"""Dense word-vector store: cosine KNN, centroids, emotion-aware retrieval.

Vectors are unit-normalized at load time, so cosine similarity reduces
to a dot product against the stored matrix. Nearest-neighbour queries
are exhaustive scans (deterministic, exact); ties are broken
lexicographically so rankings are reproducible.

The emotion-aware retrieval score of a candidate c for target emotion e
is the cosine of c to e's centroid minus the mean cosine of c to the
five other centroids; candidates close to the target emotion and far
from the rest score highest.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .emotions import EMOTIONS, check_emotion
from .errors import DataError, ResourceError

log = logging.getLogger(__name__)


class EmbeddingStore:
    """Vocabulary mapped to rows of a unit-normalized float64 matrix."""

    def __init__(self, vocab: dict[str, int], matrix: np.ndarray):
        if len(vocab) != matrix.shape[0]:
            raise DataError("vocab and matrix cardinality differ")
        self.vocab = vocab
        self.matrix = matrix
        self.words = sorted(vocab, key=vocab.get)

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self):
        return len(self.vocab)

    def __contains__(self, word: str) -> bool:
        return word in self.vocab

    def vector(self, word: str) -> np.ndarray:
        row = self.vocab.get(word)
        if row is None:
            raise DataError(f"word {word!r} is not in the embedding vocabulary")
        return self.matrix[row]

    @classmethod
    def from_mapping(cls, vectors: dict[str, "np.ndarray | list[float]"]) -> "EmbeddingStore":
        """Build a store from word -> raw vector; normalizes each row."""
        vocab, rows = {}, []
        dim = None
        for word, vec in vectors.items():
            arr = np.asarray(vec, dtype=np.float64)
            if dim is None:
                dim = arr.shape[0]
            elif arr.shape[0] != dim:
                raise DataError(f"dimension mismatch for {word!r}")
            norm = np.linalg.norm(arr)
            if norm == 0.0:
                raise DataError(f"zero vector for {word!r} cannot be normalized")
            vocab[word] = len(rows)
            rows.append(arr / norm)
        if not rows:
            raise DataError("no vectors supplied")
        return cls(vocab, np.vstack(rows))


def load_embeddings(path) -> EmbeddingStore:
    """Load a word2vec-style text file into an EmbeddingStore.

    The file holds an optional ``count dim`` header followed by one
    ``word v1 ... v_dim`` line per word. Vectors are unit-normalized;
    duplicate words keep their first occurrence.
    """
    vocab: dict[str, int] = {}
    rows: list[np.ndarray] = []
    dim = None
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open embedding file: {exc}", path=path)
    with fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                except ValueError:
                    pass
                else:
                    dim = int(parts[1])
                    continue
            word, comps = parts[0], parts[1:]
            if dim is None:
                dim = len(comps)
            if len(comps) != dim:
                raise ResourceError(
                    f"dimension mismatch: expected {dim} components, "
                    f"found {len(comps)}",
                    path=path,
                    line=lineno,
                )
            try:
                vec = np.array([float(c) for c in comps], dtype=np.float64)
            except ValueError:
                raise ResourceError(
                    "non-numeric vector component", path=path, line=lineno
                )
            if word in vocab:
                continue
            norm = np.linalg.norm(vec)
            if norm == 0.0:
                raise ResourceError(
                    f"zero vector for word {word!r} cannot be normalized",
                    path=path,
                    line=lineno,
                )
            vocab[word] = len(rows)
            rows.append(vec / norm)
    if not rows:
        raise ResourceError("embedding file contains no vectors", path=path)
    return EmbeddingStore(vocab, np.vstack(rows))


def nearest(store: EmbeddingStore, word: str, u: int) -> list[tuple[str, float]]:
    """The u most cosine-similar words to ``word``, descending.

    The query word is excluded; ties are broken lexicographically. If u
    exceeds the remaining vocabulary the full ranking is returned.
    """
    if u < 1:
        raise DataError("u must be at least 1")
    query = store.vector(word)  # raises on OOV
    sims = store.matrix @ query
    order = [(-(sims[i]), w) for w, i in store.vocab.items() if w != word]
    order.sort()
    return [(w, -neg) for neg, w in order[:u]]


def centroid(store: EmbeddingStore, words) -> np.ndarray:
    """Arithmetic mean of the unit vectors of all in-vocab members.

    Out-of-vocabulary members are skipped (a debug log records how
    many); raises DataError when every member is missing. The result is
    deliberately not re-normalized: it only ever feeds cosines, which
    are scale-invariant in this argument.
    """
    words = list(words)
    rows = [store.vocab[w] for w in words if w in store.vocab]
    skipped = len(words) - len(rows)
    if not rows:
        raise DataError("no member word is in the embedding vocabulary")
    if skipped:
        log.debug("centroid: skipped %d out-of-vocabulary members", skipped)
    return store.matrix[sorted(rows)].mean(axis=0)


def mean_vector(store: EmbeddingStore, words) -> np.ndarray | None:
    """Mean unit vector of the in-vocab words, or None if there are none."""
    rows = [store.vocab[w] for w in words if w in store.vocab]
    if not rows:
        return None
    return store.matrix[rows].mean(axis=0)


@dataclass(frozen=True)
class EmotionCentroids:
    """One centroid vector per emotion, all of equal dimension."""

    vectors: dict[str, np.ndarray]

    def __post_init__(self):
        if set(self.vectors) != set(EMOTIONS):
            raise DataError(
                f"centroids must cover exactly {', '.join(EMOTIONS)}"
            )
        for name, vec in self.vectors.items():
            if not np.all(np.isfinite(vec)):
                raise DataError(f"centroid for {name!r} has non-finite entries")

    def __getitem__(self, emotion: str) -> np.ndarray:
        return self.vectors[emotion]

    @property
    def dim(self) -> int:
        return next(iter(self.vectors.values())).shape[0]


def save_centroids(centroids: EmotionCentroids, path) -> None:
    """Write centroids as ``emotion<TAB>v1 ... v_dim`` lines."""
    with open(path, "w", encoding="utf-8") as fh:
        for emotion in EMOTIONS:
            comps = " ".join(repr(float(x)) for x in centroids[emotion])
            fh.write(f"{emotion}\t{comps}\n")


def load_centroids(path) -> EmotionCentroids:
    vectors = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open centroid file: {exc}", path=path)
    with fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                emotion, comps = line.rstrip("\n").split("\t")
                vectors[emotion] = np.array(
                    [float(c) for c in comps.split()], dtype=np.float64
                )
            except ValueError:
                raise ResourceError(
                    "malformed centroid line", path=path, line=lineno
                )
    try:
        return EmotionCentroids(vectors)
    except DataError as exc:
        raise ResourceError(str(exc), path=path)


def _cos(a: np.ndarray, b: np.ndarray) -> float:
    denom = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if denom == 0.0:
        raise DataError("cosine undefined for zero-length vector")
    return float(np.dot(a, b)) / denom


def informed_score(
    store: EmbeddingStore,
    candidate: str,
    target: str,
    centroids: EmotionCentroids,
) -> float:
    """Target-centroid cosine minus mean cosine to the other centroids.

    Lies in [-2, 2]; positive when the candidate leans towards the
    target emotion more than towards the field of the other five.
    """
    check_emotion(target)
    vec = store.vector(candidate)
    target_cos = _cos(centroids[target], vec)
    others = [_cos(centroids[e], vec) for e in EMOTIONS if e != target]
    return target_cos - sum(others) / (len(EMOTIONS) - 1)


def informed_retrieve(
    store: EmbeddingStore,
    word: str,
    target: str,
    centroids: EmotionCentroids,
    u: int,
    v: int,
) -> list[tuple[str, float]]:
    """Re-rank the u nearest neighbours of ``word`` by informed score.

    Returns the top v as (candidate, score), descending score with
    lexicographic tie-breaking. v may not exceed u; when the vocabulary
    caps the neighbour list below v, all scored neighbours are returned.
    """
    if v > u:
        raise DataError(f"v ({v}) may not exceed u ({u})")
    neighbours = nearest(store, word, u)
    scored = [
        (-informed_score(store, cand, target, centroids), cand)
        for cand, _ in neighbours
    ]
    scored.sort()
    return [(cand, -neg) for neg, cand in scored[:v]]
