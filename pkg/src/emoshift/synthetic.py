"""Deterministic toy-world generator for demos and end-to-end tests.

Builds a complete, self-consistent resource set on disk: an embedding
space whose emotion words cluster around six separable directions, a
matching binary emotion lexicon, a small lexical database linking
emotion words across emotions, a POS lexicon, a sentence corpus in
which every sentence carries exactly two words of one source emotion,
and a flat config file wiring it all together.

Everything is a pure function of the parameters (a fixed-seed RNG
drives the jitter), so repeated builds are byte-identical.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass

from .emotions import EMOTIONS

HUB_WORD = "feeling"

# Small extra vocabulary so the bundled challenge sentences stay mostly
# in-vocabulary when requested.
_CHALLENGE_VOCAB = {
    # word: emotion it leans towards (None = neutral placement)
    "i": None, "am": None, "was": None, "my": None, "are": None,
    "the": None, "to": None, "over": None, "so": None, "be": None,
    "happy": "joy", "sad": "sadness", "tears": "sadness",
    "trembling": "fear", "died": "sadness", "grandmother": None,
    "son": None, "standing": None, "close": None, "street": None,
    "running": None, "face": None,
}


@dataclass(frozen=True)
class World:
    """Paths of the generated resources plus the generated vocabulary."""

    root: str
    embeddings: str
    nrc: str
    wndb: str
    pos_lexicon: str
    corpus: str
    lm_corpus: str
    labeled_corpus: str
    config: str
    emotion_words: dict[str, list[str]]
    neutral_words: list[str]


def _emotion_direction(index: int, dim: int) -> list[float]:
    angle = 2.0 * math.pi * index / len(EMOTIONS)
    vec = [0.0] * dim
    vec[0] = math.cos(angle)
    vec[1] = math.sin(angle)
    return vec


def _rotate2d(vec, radians):
    c, s = math.cos(radians), math.sin(radians)
    out = list(vec)
    out[0] = vec[0] * c - vec[1] * s
    out[1] = vec[0] * s + vec[1] * c
    return out


def build_world(
    root,
    *,
    dim: int = 8,
    words_per_emotion: int = 4,
    n_neutral: int = 16,
    n_sentences: int = 200,
    seed: int = 0,
    include_challenge_vocab: bool = False,
) -> World:
    """Generate the full resource set under ``root`` and return paths."""
    if dim < 3:
        raise ValueError("world dimension must be at least 3")
    os.makedirs(root, exist_ok=True)
    rng = random.Random(seed)

    emotion_words = {
        emotion: [f"{emotion}{i}" for i in range(words_per_emotion)]
        for emotion in EMOTIONS
    }
    neutral_words = [f"thing{i}" for i in range(n_neutral)]

    # Embeddings: emotion words jitter around their emotion's direction
    # in the first two dimensions; neutral words live in the remaining
    # dimensions with a faint, deterministic 2d component.
    vectors: dict[str, list[float]] = {}
    for e_idx, emotion in enumerate(EMOTIONS):
        direction = _emotion_direction(e_idx, dim)
        for i, word in enumerate(emotion_words[emotion]):
            jitter = ((-1) ** i) * (i // 2 + 1) * 0.05
            vectors[word] = _rotate2d(direction, jitter)
    for j, word in enumerate(neutral_words):
        vec = [0.0] * dim
        vec[2 + j % (dim - 2)] = 1.0
        vec[0] = 0.01 * math.cos(j + 1)
        vec[1] = 0.01 * math.sin(j + 1)
        vectors[word] = vec
    hub = [0.0] * dim
    hub[2] = 0.7
    hub[dim - 1] = 0.7
    vectors[HUB_WORD] = hub
    if include_challenge_vocab:
        for j, (word, emotion) in enumerate(sorted(_CHALLENGE_VOCAB.items())):
            if word in vectors:
                continue
            if emotion is None:
                vec = [0.0] * dim
                vec[2 + j % (dim - 2)] = 0.9
                vec[3 + j % (dim - 3)] += 0.4
                vec[0] = 0.02 * math.cos(3 * j + 2)
                vec[1] = 0.02 * math.sin(3 * j + 2)
            else:
                direction = _emotion_direction(EMOTIONS.index(emotion), dim)
                vec = _rotate2d(direction, 0.02 * (j + 1))
            vectors[word] = vec

    embeddings_path = os.path.join(root, "embeddings.txt")
    with open(embeddings_path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(vectors)} {dim}\n")
        for word in sorted(vectors):
            comps = " ".join(f"{x:.6f}" for x in vectors[word])
            fh.write(f"{word} {comps}\n")

    # Emotion lexicon: each emotion word is flagged for its own emotion
    # only; neutral words and the hub appear with all-zero flags.
    nrc_path = os.path.join(root, "nrc.txt")
    with open(nrc_path, "w", encoding="utf-8") as fh:
        for emotion in EMOTIONS:
            for word in emotion_words[emotion]:
                for category in EMOTIONS:
                    flag = 1 if category == emotion else 0
                    fh.write(f"{word}\t{category}\t{flag}\n")
        for word in neutral_words + [HUB_WORD]:
            for category in EMOTIONS:
                fh.write(f"{word}\t{category}\t0\n")
        if include_challenge_vocab:
            for word, emotion in sorted(_CHALLENGE_VOCAB.items()):
                if any(word in emotion_words[e] for e in EMOTIONS):
                    continue
                for category in EMOTIONS:
                    flag = 1 if category == emotion else 0
                    fh.write(f"{word}\t{category}\t{flag}\n")

    wndb_dir = os.path.join(root, "wndb")
    _write_wndb(wndb_dir, emotion_words)

    pos_path = os.path.join(root, "pos_lexicon.tsv")
    with open(pos_path, "w", encoding="utf-8") as fh:
        words = [w for ws in emotion_words.values() for w in ws]
        words += neutral_words + [HUB_WORD]
        for word in sorted(words):
            fh.write(f"{word}\tNOUN\n")
        if include_challenge_vocab:
            for word in sorted(_CHALLENGE_VOCAB):
                fh.write(f"{word}\tOTHER\n")

    # Corpus: sentence s carries exactly two distinct words of its
    # source emotion (round-robin) embedded among neutral words.
    corpus_path = os.path.join(root, "corpus.txt")
    labeled_path = os.path.join(root, "labeled.tsv")
    sentences = []
    with open(corpus_path, "w", encoding="utf-8") as fh, \
            open(labeled_path, "w", encoding="utf-8") as lab:
        for s in range(n_sentences):
            emotion = EMOTIONS[s % len(EMOTIONS)]
            words = emotion_words[emotion]
            first = words[s // len(EMOTIONS) % len(words)]
            second = words[(s // len(EMOTIONS) + 1) % len(words)]
            fillers = [neutral_words[rng.randrange(n_neutral)] for _ in range(3)]
            sentence = [fillers[0], first, fillers[1], second, fillers[2]]
            if rng.random() < 0.5:
                sentence.append(neutral_words[rng.randrange(n_neutral)])
            line = " ".join(sentence)
            sentences.append(line)
            fh.write(line + "\n")
            lab.write(f"{emotion}\t{line}\n")

    lm_path = os.path.join(root, "lm_corpus.txt")
    with open(lm_path, "w", encoding="utf-8") as fh:
        for line in sentences:
            fh.write(line + "\n")
        if include_challenge_vocab:
            from .evaluate import CHALLENGE_SENTENCES

            for _ in range(2):  # keep challenge words above the unk threshold
                for _, text, _kind in CHALLENGE_SENTENCES:
                    fh.write(text + "\n")

    config_path = os.path.join(root, "world.conf")
    with open(config_path, "w", encoding="utf-8") as fh:
        fh.write(
            "\n".join(
                [
                    f"embeddings = {embeddings_path}",
                    f"nrc = {nrc_path}",
                    f"wndb = {wndb_dir}",
                    f"pos_lexicon = {pos_path}",
                    f"lm_corpus = {lm_path}",
                ]
            )
            + "\n"
        )

    return World(
        root=str(root),
        embeddings=embeddings_path,
        nrc=nrc_path,
        wndb=wndb_dir,
        pos_lexicon=pos_path,
        corpus=corpus_path,
        lm_corpus=lm_path,
        labeled_corpus=labeled_path,
        config=config_path,
        emotion_words=emotion_words,
        neutral_words=neutral_words,
    )


def _write_wndb(directory, emotion_words) -> None:
    """Write a minimal noun database linking emotion words.

    Every emotion word's synset has a hypernym pointer to a shared hub
    synset. Even-indexed words additionally point (hyponym) at the
    same-indexed word of every other emotion, so lexical retrieval can
    reach other emotions for some words but not all.
    """
    os.makedirs(directory, exist_ok=True)
    words = [(e, w) for e in EMOTIONS for w in emotion_words[e]]
    offsets = {w: 100 + 10 * i for i, (_, w) in enumerate(words)}
    hub_offset = 90
    lines = []
    hub_ptrs = [("~", offsets[w]) for _, w in words]
    lines.append(_data_line(hub_offset, [HUB_WORD], hub_ptrs))
    per_emotion_count = {e: len(emotion_words[e]) for e in EMOTIONS}
    for e, w in words:
        index = emotion_words[e].index(w)
        ptrs = [("@", hub_offset)]
        if index % 2 == 0:
            for other in EMOTIONS:
                if other == e or index >= per_emotion_count[other]:
                    continue
                ptrs.append(("~", offsets[emotion_words[other][index]]))
        lines.append(_data_line(offsets[w], [w], ptrs))

    license_line = "  1 generated fixture database; lines starting with "
    with open(os.path.join(directory, "data.noun"), "w", encoding="utf-8") as fh:
        fh.write(license_line + "spaces are skipped\n")
        fh.write("\n".join(lines) + "\n")
    with open(os.path.join(directory, "index.noun"), "w", encoding="utf-8") as fh:
        fh.write(license_line + "spaces are skipped\n")
        entries = [(HUB_WORD, hub_offset)] + [(w, offsets[w]) for _, w in words]
        for word, offset in sorted(entries):
            fh.write(f"{word} n 1 0 1 0 {offset:08d}  \n")
    for suffix in ("verb", "adj", "adv"):
        for kind in ("data", "index"):
            path = os.path.join(directory, f"{kind}.{suffix}")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(license_line + "empty fixture file\n")


def _data_line(offset, lemmas, pointers, ss_type="n") -> str:
    parts = [f"{offset:08d}", "03", ss_type, f"{len(lemmas):02x}"]
    for lemma in lemmas:
        parts += [lemma, "0"]
    parts.append(f"{len(pointers):03d}")
    for symbol, target in pointers:
        parts += [symbol, f"{target:08d}", "n", "0000"]
    parts += ["|", "generated synset"]
    return " ".join(parts)
