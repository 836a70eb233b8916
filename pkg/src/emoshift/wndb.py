"""Princeton WordNet flat-file database parsing and candidate retrieval.

Reads the ``index.{noun,verb,adj,adv}`` and ``data.{noun,verb,adj,adv}``
files of a WNDB 3.x directory into an immutable in-memory database, then
retrieves single-hop substitution candidates:

* nouns and verbs: lemmas of synsets one hypernym (``@``, ``@i``) or
  hyponym (``~``, ``~i``) pointer away,
* adjectives: co-lemmas of the word's own synsets, lemmas of similar-to
  (``&``) neighbours, and antonym (``!``) pointer targets.

No word-sense disambiguation is performed; every sense of the queried
(lemma, pos) pair contributes. Adverbs and OTHER-tagged tokens retrieve
nothing.

Format notes for the fields consumed here: in data lines the word count
is 2-digit hexadecimal, each word's lex_id is 1-digit hexadecimal, the
pointer count is 3-digit decimal, and a pointer's source/target field is
4 hexadecimal digits (00 00 marks a semantic pointer; otherwise the two
bytes are 1-based source and target word numbers). License header lines
start with whitespace and are skipped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import ResourceError
from .text import ADJ, ADV, NOUN, VERB

# data-file suffix per POS and the ss_type characters that map onto it.
_POS_FILES = {NOUN: "noun", VERB: "verb", ADJ: "adj", ADV: "adv"}
_SS_TYPE_POS = {"n": NOUN, "v": VERB, "a": ADJ, "s": ADJ, "r": ADV}
_INDEX_POS = {"n": NOUN, "v": VERB, "a": ADJ, "r": ADV}

_HYPER_HYPO = {"@", "@i", "~", "~i"}
_SIMILAR = "&"
_ANTONYM = "!"

# Adjective surface markers like "(p)" or "(ip)" are not part of the lemma.
_ADJ_MARKERS = ("(p)", "(a)", "(ip)")


@dataclass(frozen=True, order=True)
class SynsetKey:
    """Byte offset plus POS; unique within one database version."""

    offset: int
    pos: str


@dataclass(frozen=True)
class Pointer:
    symbol: str
    target: SynsetKey
    source_word: int  # 1-based word number in the source synset, 0 = semantic
    target_word: int  # 1-based word number in the target synset, 0 = semantic


@dataclass(frozen=True)
class Synset:
    key: SynsetKey
    lemmas: tuple[str, ...]
    pointers: tuple[Pointer, ...] = ()


@dataclass
class LexicalDb:
    """(lemma, pos) index over fully resolved synsets."""

    index: dict[tuple[str, str], tuple[SynsetKey, ...]] = field(default_factory=dict)
    synsets: dict[SynsetKey, Synset] = field(default_factory=dict)

    def __len__(self):
        return len(self.synsets)

    def lemma_known(self, lemma: str, pos: str) -> bool:
        return (lemma, pos) in self.index


def _strip_marker(word: str) -> str:
    for marker in _ADJ_MARKERS:
        if word.endswith(marker):
            return word[: -len(marker)]
    return word


def _parse_data_line(line: str, path, lineno: int) -> Synset:
    parts = line.split()
    try:
        offset = int(parts[0])
        ss_type = parts[2]
        pos = _SS_TYPE_POS[ss_type]
        w_cnt = int(parts[3], 16)
        if w_cnt < 1:
            raise ValueError("empty lemma list")
        words = []
        cursor = 4
        for _ in range(w_cnt):
            word = _strip_marker(parts[cursor]).lower()
            int(parts[cursor + 1], 16)  # lex_id, validated but unused
            words.append(word)
            cursor += 2
        p_cnt = int(parts[cursor])
        cursor += 1
        pointers = []
        for _ in range(p_cnt):
            symbol = parts[cursor]
            target_offset = int(parts[cursor + 1])
            target_pos = _INDEX_POS[parts[cursor + 2]]
            st = parts[cursor + 3]
            if len(st) != 4:
                raise ValueError(f"bad source/target field {st!r}")
            source_word = int(st[:2], 16)
            target_word = int(st[2:], 16)
            pointers.append(
                Pointer(symbol, SynsetKey(target_offset, target_pos),
                        source_word, target_word)
            )
            cursor += 4
    except (ValueError, KeyError, IndexError) as exc:
        raise ResourceError(f"malformed data line: {exc}", path=path, line=lineno)
    return Synset(SynsetKey(offset, pos), tuple(words), tuple(pointers))


def _parse_index_line(line: str, path, lineno: int):
    parts = line.split()
    try:
        lemma = parts[0].lower()
        pos = _INDEX_POS[parts[1]]
        synset_cnt = int(parts[2])
        p_cnt = int(parts[3])
        cursor = 4 + p_cnt  # skip the ptr_symbol list
        cursor += 2  # sense_cnt, tagsense_cnt
        offsets = [int(x) for x in parts[cursor : cursor + synset_cnt]]
        if len(offsets) != synset_cnt:
            raise ValueError(
                f"expected {synset_cnt} offsets, found {len(offsets)}"
            )
    except (ValueError, KeyError, IndexError) as exc:
        raise ResourceError(f"malformed index line: {exc}", path=path, line=lineno)
    return lemma, pos, offsets


def load_wndb(directory) -> LexicalDb:
    """Load all eight WNDB files from a directory into a LexicalDb.

    Raises ResourceError when a file is missing, a line is malformed, an
    index entry points at an unknown synset, or a pointer target does
    not resolve within the loaded database.
    """
    db = LexicalDb()
    for pos, suffix in _POS_FILES.items():
        data_path = os.path.join(directory, f"data.{suffix}")
        index_path = os.path.join(directory, f"index.{suffix}")
        for path in (data_path, index_path):
            if not os.path.isfile(path):
                raise ResourceError("missing database file", path=path)
        with open(data_path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip() or line[0].isspace():
                    continue  # license header / blank
                synset = _parse_data_line(line, data_path, lineno)
                db.synsets[synset.key] = synset
        with open(index_path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip() or line[0].isspace():
                    continue
                lemma, idx_pos, offsets = _parse_index_line(line, index_path, lineno)
                keys = tuple(SynsetKey(off, idx_pos) for off in offsets)
                for key in keys:
                    if key not in db.synsets:
                        raise ResourceError(
                            f"index entry {lemma!r} references unknown synset "
                            f"offset {key.offset}",
                            path=index_path,
                            line=lineno,
                        )
                db.index[(lemma, idx_pos)] = keys
    for synset in db.synsets.values():
        for ptr in synset.pointers:
            if ptr.target not in db.synsets:
                raise ResourceError(
                    f"pointer {ptr.symbol!r} from synset {synset.key.offset} "
                    f"({synset.key.pos}) targets unresolved synset "
                    f"{ptr.target.offset} ({ptr.target.pos})"
                )
    return db


def candidates_for(
    db: LexicalDb, surface: str, pos: str, include_multiword: bool = False
) -> list[str]:
    """Single-hop substitution candidates for a (surface, pos) query.

    Returns a lexicographically sorted list. The query surface itself is
    never included; multiword lemmas (containing ``_``) are dropped
    unless ``include_multiword`` is set. Unknown words, adverbs and
    OTHER-tagged tokens yield an empty list.
    """
    surface = surface.lower()
    if pos not in (NOUN, VERB, ADJ):
        return []
    found: set[str] = set()
    for key in db.index.get((surface, pos), ()):
        synset = db.synsets[key]
        if pos in (NOUN, VERB):
            for ptr in synset.pointers:
                if ptr.symbol in _HYPER_HYPO:
                    found.update(db.synsets[ptr.target].lemmas)
        else:
            found.update(synset.lemmas)
            for ptr in synset.pointers:
                if ptr.symbol == _SIMILAR:
                    found.update(db.synsets[ptr.target].lemmas)
                elif ptr.symbol == _ANTONYM:
                    target = db.synsets[ptr.target]
                    if 1 <= ptr.target_word <= len(target.lemmas):
                        found.add(target.lemmas[ptr.target_word - 1])
                    else:
                        found.update(target.lemmas)
    found.discard(surface)
    if not include_multiword:
        found = {w for w in found if "_" not in w}
    return sorted(found)
