import math
import os

import numpy as np
import pytest

from emoshift.embeddings import EmbeddingStore
from emoshift.emolex import EmotionLexicon
from emoshift.emotions import EMOTIONS

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def wndb_dir():
    return os.path.join(DATA_DIR, "wndb_mini")


@pytest.fixture(scope="session")
def lm_corpus_path():
    return os.path.join(DATA_DIR, "lm_corpus.txt")


def emotion_angle_store(words_per_emotion=4, n_neutral=4):
    """2-dim store: each emotion's words jitter around one of six angles."""
    vectors = {}
    for e_idx, emotion in enumerate(EMOTIONS):
        angle = 2 * math.pi * e_idx / 6
        for i in range(words_per_emotion):
            theta = angle + ((-1) ** i) * (i // 2 + 1) * 0.05
            vectors[f"{emotion}{i}"] = [math.cos(theta), math.sin(theta)]
    for j in range(n_neutral):
        theta = 2 * math.pi * (j + 0.5) / max(n_neutral, 1)
        vectors[f"n{j}"] = [0.3 * math.cos(theta), 0.3 * math.sin(theta)]
    return EmbeddingStore.from_mapping(vectors)


def planted_lexicon(words_per_emotion=4):
    """Lexicon flagging each emotion's words for that emotion only."""
    associations = {}
    for emotion in EMOTIONS:
        for i in range(words_per_emotion):
            for category in EMOTIONS:
                flag = 1 if category == emotion else 0
                associations[(f"{emotion}{i}", category)] = flag
    return EmotionLexicon(associations)


@pytest.fixture(scope="session")
def angle_store():
    return emotion_angle_store()


@pytest.fixture(scope="session")
def angle_lexicon():
    return planted_lexicon()
