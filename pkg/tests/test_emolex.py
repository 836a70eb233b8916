import numpy as np
import pytest

from emoshift.embeddings import EmbeddingStore
from emoshift.emolex import (
    EmotionLexicon,
    LexiconScorer,
    build_centroids,
    emotion_terms,
    lexicon_activations,
    load_nrc,
)
from emoshift.emotions import EMOTIONS
from emoshift.errors import DataError, ResourceError


def write_nrc(tmp_path, lines):
    path = tmp_path / "nrc.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


class TestLoadNrc:
    def test_fixture_term_count(self, tmp_path):
        lines = []
        for term in ("abandon", "cheer", "grim", "spark", "tremor"):
            for e in EMOTIONS:
                lines.append(f"{term}\t{e}\t0")
        path = write_nrc(tmp_path, lines)
        lex = load_nrc(path)
        assert len(lex) == 5

    def test_direct_parse(self, tmp_path):
        path = write_nrc(tmp_path, ["abandon\tanger\t1"])
        lex = load_nrc(path)
        assert lex.flag("abandon", "anger") == 1
        assert lex.flag("abandon", "joy") == 0

    def test_non_target_categories_dropped(self, tmp_path):
        path = write_nrc(tmp_path, [
            "cheer\tjoy\t1",
            "cheer\tpositive\t1",
            "cheer\tanticipation\t1",
        ])
        lex = load_nrc(path)
        assert ("cheer", "positive") not in lex.associations
        assert lex.flag("cheer", "joy") == 1

    def test_value_out_of_range(self, tmp_path):
        path = write_nrc(tmp_path, ["abandon\tanger\t2"])
        with pytest.raises(ResourceError) as err:
            load_nrc(path)
        assert "out of range" in str(err.value)

    def test_malformed_line(self, tmp_path):
        path = write_nrc(tmp_path, ["abandon anger 1"])
        with pytest.raises(ResourceError):
            load_nrc(path)

    def test_lowercased_terms(self, tmp_path):
        path = write_nrc(tmp_path, ["Cheer\tJoy\t1"])
        lex = load_nrc(path)
        assert lex.flag("cheer", "joy") == 1


class TestEmotionTerms:
    def lex(self):
        return EmotionLexicon({
            ("glee", "joy"): 1,
            ("spark", "joy"): 1,
            ("spark", "surprise"): 1,
            ("grim", "fear"): 1,
            ("grim", "sadness"): 0,
        })

    def test_flagged_terms_only(self):
        assert emotion_terms(self.lex(), "joy") == {"glee", "spark"}

    def test_empty_set(self):
        assert emotion_terms(self.lex(), "anger") == set()

    def test_overlapping_flags(self):
        lex = self.lex()
        assert "spark" in emotion_terms(lex, "joy")
        assert "spark" in emotion_terms(lex, "surprise")

    def test_unknown_emotion_rejected(self):
        with pytest.raises(ValueError):
            emotion_terms(self.lex(), "boredom")


class TestBuildCentroids:
    def store(self):
        return EmbeddingStore.from_mapping({
            "a_word": [1.0, 0.0],
            "b_word": [0.0, 1.0],
            "c_word": [1.0, 1.0],
        })

    def full_lexicon(self, assignments):
        associations = {}
        for emotion, terms in assignments.items():
            for term in terms:
                associations[(term, emotion)] = 1
        return EmotionLexicon(associations)

    def test_singleton_equals_vector(self):
        lex = self.full_lexicon({e: ["a_word"] for e in EMOTIONS})
        cents = build_centroids(lex, self.store())
        np.testing.assert_allclose(cents["joy"], [1.0, 0.0])

    def test_mean_of_two_orthogonal(self):
        assignments = {e: ["a_word"] for e in EMOTIONS}
        assignments["fear"] = ["a_word", "b_word"]
        cents = build_centroids(self.full_lexicon(assignments), self.store())
        np.testing.assert_allclose(cents["fear"], [0.5, 0.5])

    def test_all_oov_names_emotion(self):
        assignments = {e: ["a_word"] for e in EMOTIONS}
        assignments["disgust"] = ["missing"]
        with pytest.raises(DataError) as err:
            build_centroids(self.full_lexicon(assignments), self.store())
        assert "disgust" in str(err.value)

    def test_hand_averaged_fixture(self, angle_store, angle_lexicon):
        cents = build_centroids(angle_lexicon, angle_store)
        for e in EMOTIONS:
            member_vectors = [angle_store.vector(f"{e}{i}") for i in range(4)]
            np.testing.assert_allclose(
                cents[e], np.mean(member_vectors, axis=0), atol=1e-12
            )


class TestActivations:
    def lex(self):
        return EmotionLexicon({
            ("happy", "joy"): 1,
            ("furious", "anger"): 1,
            ("rage", "anger"): 1,
        })

    def test_single_hit(self):
        acts = lexicon_activations(self.lex(), ("i", "am", "happy"))
        np.testing.assert_array_equal(acts, [0, 0, 0, 1, 0, 0])

    def test_no_hits_zero_vector(self):
        acts = lexicon_activations(self.lex(), ("nothing", "here"))
        np.testing.assert_array_equal(acts, np.zeros(6))

    def test_counting(self):
        acts = lexicon_activations(
            self.lex(), ("rage", "and", "furious", "but", "happy")
        )
        np.testing.assert_array_equal(acts, [2, 0, 0, 1, 0, 0])

    def test_permutation_invariant(self):
        words = ("rage", "happy", "calm", "furious")
        base = lexicon_activations(self.lex(), words)
        np.testing.assert_array_equal(
            base, lexicon_activations(self.lex(), tuple(reversed(words)))
        )

    def test_additive_over_concatenation(self):
        a = ("rage", "x")
        b = ("happy", "furious")
        both = lexicon_activations(self.lex(), a + b)
        np.testing.assert_array_equal(
            both,
            lexicon_activations(self.lex(), a) + lexicon_activations(self.lex(), b),
        )

    def test_scorer_matches_function(self):
        scorer = LexiconScorer(self.lex())
        words = ("rage", "happy", "rage")
        np.testing.assert_array_equal(
            scorer.activations(words), lexicon_activations(self.lex(), words)
        )
        np.testing.assert_array_equal(
            scorer.activations_many([words, ("x",)])[0],
            lexicon_activations(self.lex(), words),
        )
