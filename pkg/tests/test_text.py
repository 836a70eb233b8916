import pytest

from emoshift.errors import DataError, ResourceError
from emoshift.text import (
    POSLexicon,
    Sentence,
    Token,
    parse_tagged,
    pos_tag,
    tokenize,
)


class TestTokenize:
    def test_whitespace_split(self):
        assert tokenize("I am happy").surfaces == ("i", "am", "happy")

    def test_punctuation_as_own_token(self):
        s = tokenize("surprises are great when the person is surprised !")
        assert len(s) == 9
        assert s.surfaces[-1] == "!"

    def test_apostrophe_splits(self):
        assert tokenize("don't").surfaces == ("don", "'", "t")

    def test_attached_punctuation(self):
        assert tokenize("Hello, world!").surfaces == ("hello", ",", "world", "!")

    def test_lowercasing(self):
        assert tokenize("HELLO World").surfaces == ("hello", "world")

    def test_empty_input_rejected(self):
        with pytest.raises(DataError):
            tokenize("   ")
        with pytest.raises(DataError):
            tokenize("")

    def test_indices_match_positions(self):
        s = tokenize("one two three")
        assert [t.index for t in s] == [0, 1, 2]

    def test_idempotent_on_detokenized_output(self):
        inputs = [
            "I am happy",
            "don't stop!",
            "well... that's (quite) odd, no?",
            "a  lot   of\tspace",
        ]
        for raw in inputs:
            once = tokenize(raw)
            twice = tokenize(once.text)
            assert once.surfaces == twice.surfaces


class TestSentenceModel:
    def test_token_invariants(self):
        with pytest.raises(DataError):
            Token("has space")
        with pytest.raises(DataError):
            Token("")
        with pytest.raises(DataError):
            Token("fine", pos="VBZ")

    def test_sentence_index_gap_rejected(self):
        with pytest.raises(DataError):
            Sentence((Token("a", index=0), Token("b", index=2)))


class TestPosTag:
    def lexicon(self):
        return POSLexicon({"happy": "ADJ", "dog": "NOUN", "run": "VERB"})

    def test_direct_lookup(self):
        s = pos_tag(tokenize("happy"), self.lexicon())
        assert s.tokens[0].pos == "ADJ"

    def test_suffix_adverb(self):
        s = pos_tag(tokenize("quickly"), self.lexicon())
        assert s.tokens[0].pos == "ADV"

    def test_suffix_noun(self):
        s = pos_tag(tokenize("drudgery"), self.lexicon())
        assert s.tokens[0].pos == "NOUN"

    def test_suffix_verb(self):
        s = pos_tag(tokenize("walking walked"), self.lexicon())
        assert [t.pos for t in s] == ["VERB", "VERB"]

    def test_unknown_word_gets_other(self):
        s = pos_tag(tokenize("zzzz"), self.lexicon())
        assert s.tokens[0].pos == "OTHER"

    def test_surfaces_and_indices_untouched(self):
        before = tokenize("the dog runs quickly !")
        after = pos_tag(before, self.lexicon())
        assert after.surfaces == before.surfaces
        assert [t.index for t in after] == [t.index for t in before]

    def test_lexicon_beats_suffix(self):
        lex = POSLexicon({"quickly": "NOUN"})
        s = pos_tag(tokenize("quickly"), lex)
        assert s.tokens[0].pos == "NOUN"


class TestPOSLexiconFile:
    def test_load(self, tmp_path):
        path = tmp_path / "pos.tsv"
        path.write_text("happy\tADJ\ndog\tNOUN\n# comment\n\nrun\tVERB\n")
        lex = POSLexicon.load(path)
        assert len(lex) == 3
        assert lex.get("dog") == "NOUN"

    def test_bad_tag_rejected(self, tmp_path):
        path = tmp_path / "pos.tsv"
        path.write_text("happy\tJJ\n")
        with pytest.raises(ResourceError) as err:
            POSLexicon.load(path)
        assert "1" in str(err.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ResourceError):
            POSLexicon.load(tmp_path / "nope.tsv")


class TestPreTagged:
    def test_parse(self):
        s = parse_tagged("I/OTHER am/VERB happy/ADJ")
        assert s.surfaces == ("i", "am", "happy")
        assert [t.pos for t in s] == ["OTHER", "VERB", "ADJ"]

    def test_bad_pair_rejected(self):
        with pytest.raises(DataError):
            parse_tagged("I/OTHER am/XX")
        with pytest.raises(DataError):
            parse_tagged("plain words only")

    def test_empty_rejected(self):
        with pytest.raises(DataError):
            parse_tagged("  ")
