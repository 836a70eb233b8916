import math

import numpy as np
import pytest

from emoshift.embeddings import (
    EmbeddingStore,
    EmotionCentroids,
    centroid,
    informed_retrieve,
    informed_score,
    load_centroids,
    load_embeddings,
    nearest,
    save_centroids,
)
from emoshift.emotions import EMOTIONS
from emoshift.errors import DataError, ResourceError

from conftest import emotion_angle_store


def write_vectors(tmp_path, lines, header=None):
    path = tmp_path / "vecs.txt"
    body = "" if header is None else header + "\n"
    path.write_text(body + "\n".join(lines) + "\n")
    return path


class TestLoad:
    def test_small_fixture(self, tmp_path):
        path = write_vectors(
            tmp_path, ["alpha 1 0", "beta 0 1", "gamma 1 1"], header="3 2"
        )
        store = load_embeddings(path)
        assert len(store) == 3
        assert store.dim == 2

    def test_headerless(self, tmp_path):
        path = write_vectors(tmp_path, ["alpha 1 0 0", "beta 0 2 0"])
        store = load_embeddings(path)
        assert len(store) == 2 and store.dim == 3

    def test_normalized_on_load(self, tmp_path):
        path = write_vectors(tmp_path, ["word 3 4"])
        store = load_embeddings(path)
        np.testing.assert_allclose(store.vector("word"), [0.6, 0.8])

    def test_all_norms_unit(self, tmp_path):
        path = write_vectors(
            tmp_path, ["a 5 1", "b -2 7", "c 0.1 0.3", "d 100 -40"]
        )
        store = load_embeddings(path)
        norms = np.linalg.norm(store.matrix, axis=1)
        np.testing.assert_allclose(norms, 1.0, atol=1e-6)

    def test_duplicates_keep_first(self, tmp_path):
        path = write_vectors(tmp_path, ["dup 1 0", "dup 0 1"])
        store = load_embeddings(path)
        assert len(store) == 1
        np.testing.assert_allclose(store.vector("dup"), [1.0, 0.0])

    def test_dimension_mismatch(self, tmp_path):
        path = write_vectors(tmp_path, ["a 1 0"], header="1 3")
        with pytest.raises(ResourceError) as err:
            load_embeddings(path)
        assert "dimension" in str(err.value)

    def test_non_numeric_component(self, tmp_path):
        path = write_vectors(tmp_path, ["a 1 0", "b x 1"])
        with pytest.raises(ResourceError) as err:
            load_embeddings(path)
        assert "non-numeric" in str(err.value) and ":2" in str(err.value)

    def test_zero_vector_rejected(self, tmp_path):
        path = write_vectors(tmp_path, ["a 0 0"])
        with pytest.raises(ResourceError) as err:
            load_embeddings(path)
        assert "zero" in str(err.value)

    def test_scaling_leaves_rankings_unchanged(self, tmp_path):
        base = ["a 1 2", "b 3 1", "c -1 1", "q 1 1"]
        scaled = ["a 10 20", "b 0.6 0.2", "c -7 7", "q 1 1"]
        s1 = load_embeddings(write_vectors(tmp_path, base))
        path2 = tmp_path / "scaled.txt"
        path2.write_text("\n".join(scaled) + "\n")
        s2 = load_embeddings(path2)
        first, second = nearest(s1, "q", 3), nearest(s2, "q", 3)
        assert [w for w, _ in first] == [w for w, _ in second]
        np.testing.assert_allclose(
            [c for _, c in first], [c for _, c in second], atol=1e-9
        )


class TestNearest:
    def store(self):
        return EmbeddingStore.from_mapping({
            "happy": [1.0, 0.0],
            "glad": [math.cos(0.45), math.sin(0.45)],  # cos to happy = 0.9004
            "sad": [-1.0, 0.0],
            "meh": [0.0, 1.0],
        })

    def test_top1(self):
        top = nearest(self.store(), "happy", 1)
        assert top[0][0] == "glad"
        assert top[0][1] == pytest.approx(math.cos(0.45))

    def test_descending_and_exclusion(self):
        result = nearest(self.store(), "happy", 10)
        words = [w for w, _ in result]
        sims = [c for _, c in result]
        assert "happy" not in words
        assert sims == sorted(sims, reverse=True)
        assert words == ["glad", "meh", "sad"]  # full ranking when u >= |V|-1

    def test_tie_broken_lexicographically(self):
        store = EmbeddingStore.from_mapping({
            "q": [1.0, 0.0],
            "zeta": [0.0, 1.0],
            "alpha": [0.0, 1.0],
        })
        result = nearest(store, "q", 2)
        assert [w for w, _ in result] == ["alpha", "zeta"]

    def test_oov_error(self):
        with pytest.raises(DataError):
            nearest(self.store(), "nope", 1)

    def test_u_validation(self):
        with pytest.raises(DataError):
            nearest(self.store(), "happy", 0)

    def test_exclusion_property_across_vocab(self):
        store = emotion_angle_store()
        for word in list(store.vocab)[:10]:
            result = nearest(store, word, 5)
            assert word not in [w for w, _ in result]
            sims = [c for _, c in result]
            assert sims == sorted(sims, reverse=True)


class TestCentroid:
    def test_singleton(self):
        store = EmbeddingStore.from_mapping({"w": [0.0, 2.0], "x": [1.0, 0.0]})
        np.testing.assert_allclose(centroid(store, {"w"}), [0.0, 1.0])

    def test_mean_of_orthogonal_units(self):
        store = EmbeddingStore.from_mapping({"w1": [1.0, 0.0], "w2": [0.0, 1.0]})
        np.testing.assert_allclose(centroid(store, ["w1", "w2"]), [0.5, 0.5])

    def test_oov_members_skipped(self):
        store = EmbeddingStore.from_mapping({"w1": [1.0, 0.0], "w2": [0.0, 1.0]})
        np.testing.assert_allclose(
            centroid(store, ["w1", "w2", "missing"]), [0.5, 0.5]
        )

    def test_all_oov_error(self):
        store = EmbeddingStore.from_mapping({"w1": [1.0, 0.0]})
        with pytest.raises(DataError):
            centroid(store, ["missing", "also_missing"])

    def test_order_independent(self):
        store = emotion_angle_store()
        words = ["joy0", "joy1", "joy2", "joy3"]
        a = centroid(store, words)
        b = centroid(store, list(reversed(words)))
        np.testing.assert_array_equal(a, b)


def orthogonal_centroids(dim=8):
    vectors = {e: np.zeros(dim) for e in EMOTIONS}
    for i, e in enumerate(EMOTIONS):
        vectors[e][i] = 1.0
    return EmotionCentroids(vectors)


class TestInformedScore:
    def test_orthogonal_candidate_scores_zero(self):
        cents = orthogonal_centroids()
        vec = np.zeros(8)
        vec[7] = 1.0
        store = EmbeddingStore.from_mapping({"c": vec})
        assert informed_score(store, "c", "joy", cents) == pytest.approx(0.0)

    def test_aligned_candidate_scores_one(self):
        cents = orthogonal_centroids()
        vec = np.zeros(8)
        vec[EMOTIONS.index("joy")] = 1.0
        store = EmbeddingStore.from_mapping({"c": vec})
        assert informed_score(store, "c", "joy", cents) == pytest.approx(1.0)

    def test_matches_brute_force_on_random_fixtures(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            cents = EmotionCentroids(
                {e: rng.normal(size=2) for e in EMOTIONS}
            )
            store = EmbeddingStore.from_mapping(
                {"c": rng.normal(size=2) + 1e-3}
            )
            got = informed_score(store, "c", "fear", cents)
            c = store.vector("c")

            def cos(a, b):
                return float(a @ b / (np.linalg.norm(a) * np.linalg.norm(b)))

            others = [cos(cents[e], c) for e in EMOTIONS if e != "fear"]
            expected = cos(cents["fear"], c) - sum(others) / 5
            assert got == pytest.approx(expected, abs=1e-12)

    def test_oov_error(self):
        store = EmbeddingStore.from_mapping({"c": [1.0, 0.0]})
        cents = EmotionCentroids({e: np.ones(2) for e in EMOTIONS})
        with pytest.raises(DataError):
            informed_score(store, "missing", "joy", cents)


class TestInformedRetrieve:
    def setup_method(self):
        self.store = emotion_angle_store(words_per_emotion=4, n_neutral=4)
        self.cents = EmotionCentroids({
            e: centroid(self.store, [f"{e}{i}" for i in range(4)])
            for e in EMOTIONS
        })

    def test_u_equals_v_same_membership(self):
        got = informed_retrieve(self.store, "anger0", "joy", self.cents, 8, 8)
        base = nearest(self.store, "anger0", 8)
        assert {w for w, _ in got} == {w for w, _ in base}

    def test_target_aligned_neighbour_ranks_first(self):
        got = informed_retrieve(self.store, "joy1", "joy", self.cents,
                                u=27, v=1)
        assert got[0][0].startswith("joy")

    def test_subset_of_nearest(self):
        got = informed_retrieve(self.store, "anger0", "sadness", self.cents,
                                u=10, v=4)
        base = {w for w, _ in nearest(self.store, "anger0", 10)}
        assert {w for w, _ in got} <= base

    def test_v_exceeding_u_rejected(self):
        with pytest.raises(DataError):
            informed_retrieve(self.store, "anger0", "joy", self.cents, 3, 5)

    def test_scores_descending(self):
        got = informed_retrieve(self.store, "fear2", "disgust", self.cents,
                                u=20, v=20)
        scores = [s for _, s in got]
        assert scores == sorted(scores, reverse=True)


class TestCentroidSerialization:
    def test_round_trip(self, tmp_path):
        store = emotion_angle_store()
        cents = EmotionCentroids({
            e: centroid(store, [f"{e}{i}" for i in range(4)])
            for e in EMOTIONS
        })
        path = tmp_path / "centroids.tsv"
        save_centroids(cents, path)
        loaded = load_centroids(path)
        for e in EMOTIONS:
            np.testing.assert_array_equal(loaded[e], cents[e])

    def test_incomplete_file_rejected(self, tmp_path):
        path = tmp_path / "centroids.tsv"
        path.write_text("joy\t1.0 0.0\n")
        with pytest.raises(ResourceError):
            load_centroids(path)
