"""Tokenization, coarse part-of-speech tagging, and the sentence model.

The pipeline operates on lowercase tokens with a five-way POS tag
(NOUN, VERB, ADJ, ADV, OTHER). Tagging is lookup-based with suffix
fallbacks; input may also arrive pre-tagged as ``token/TAG`` pairs,
which bypasses the tagger entirely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import DataError, ResourceError

NOUN = "NOUN"
VERB = "VERB"
ADJ = "ADJ"
ADV = "ADV"
OTHER = "OTHER"

POS_TAGS = (NOUN, VERB, ADJ, ADV, OTHER)

# Runs of word characters, or any single non-space character (so every
# punctuation mark becomes its own token).
_TOKEN_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)

# Suffix fallbacks for words missing from the lexicon, tried in order.
# Longer suffixes first so e.g. "-ness" wins before any shorter match.
_SUFFIX_RULES = (
    ("ness", NOUN),
    ("ment", NOUN),
    ("tion", NOUN),
    ("sion", NOUN),
    ("ship", NOUN),
    ("hood", NOUN),
    ("able", ADJ),
    ("ible", ADJ),
    ("less", ADJ),
    ("ery", NOUN),
    ("ity", NOUN),
    ("ism", NOUN),
    ("ing", VERB),
    ("ize", VERB),
    ("ise", VERB),
    ("ful", ADJ),
    ("ous", ADJ),
    ("ive", ADJ),
    ("ish", ADJ),
    ("ed", VERB),
    ("ly", ADV),
)


@dataclass(frozen=True)
class Token:
    """One token: lowercase surface form, coarse POS tag, 0-based position."""

    surface: str
    pos: str = OTHER
    index: int = 0

    def __post_init__(self):
        if not self.surface or re.search(r"\s", self.surface):
            raise DataError(f"invalid token surface {self.surface!r}")
        if self.pos not in POS_TAGS:
            raise DataError(f"invalid POS tag {self.pos!r}")


@dataclass(frozen=True)
class Sentence:
    """An ordered, immutable token sequence plus the original raw text."""

    tokens: tuple[Token, ...]
    raw: str = ""

    def __post_init__(self):
        for i, tok in enumerate(self.tokens):
            if tok.index != i:
                raise DataError(
                    f"token index {tok.index} does not match position {i}"
                )

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    @property
    def text(self) -> str:
        """Detokenized form: surfaces joined by single spaces."""
        return " ".join(self.surfaces)

    @classmethod
    def from_surfaces(cls, surfaces, pos=None, raw=None) -> "Sentence":
        """Build a sentence from plain surfaces (POS defaults to OTHER)."""
        surfaces = tuple(surfaces)
        tags = tuple(pos) if pos is not None else (OTHER,) * len(surfaces)
        if len(tags) != len(surfaces):
            raise DataError("surfaces and POS tags differ in length")
        tokens = tuple(
            Token(s, p, i) for i, (s, p) in enumerate(zip(surfaces, tags))
        )
        return cls(tokens, raw if raw is not None else " ".join(surfaces))


def tokenize(raw: str) -> Sentence:
    """Split raw text into lowercase tokens.

    Splits on whitespace and at punctuation; every punctuation mark
    becomes its own token ("don't" -> don, ', t). Raises DataError on
    whitespace-only input.
    """
    if not raw or not raw.strip():
        raise DataError("cannot tokenize empty or whitespace-only input")
    surfaces = [m.group(0).lower() for m in _TOKEN_RE.finditer(raw)]
    if not surfaces:
        raise DataError("no tokens found in input")
    return Sentence.from_surfaces(surfaces, raw=raw)


class POSLexicon:
    """Word -> coarse tag table loaded from a ``word<TAB>TAG`` file."""

    def __init__(self, entries: dict[str, str] | None = None):
        self.entries = dict(entries or {})

    def __len__(self):
        return len(self.entries)

    def get(self, word: str) -> str | None:
        return self.entries.get(word)

    @classmethod
    def load(cls, path) -> "POSLexicon":
        entries = {}
        try:
            fh = open(path, encoding="utf-8")
        except OSError as exc:
            raise ResourceError(f"cannot open POS lexicon: {exc}", path=path)
        with fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise ResourceError(
                        "expected 'word<TAB>TAG'", path=path, line=lineno
                    )
                word, tag = parts[0].strip().lower(), parts[1].strip().upper()
                if not word or tag not in POS_TAGS:
                    raise ResourceError(
                        f"bad POS lexicon entry {line!r}", path=path, line=lineno
                    )
                entries.setdefault(word, tag)
        return cls(entries)


def _suffix_tag(word: str) -> str:
    for suffix, tag in _SUFFIX_RULES:
        if len(word) > len(suffix) + 1 and word.endswith(suffix):
            return tag
    return OTHER


def pos_tag(sentence: Sentence, lexicon: POSLexicon) -> Sentence:
    """Assign coarse POS tags by lexicon lookup with suffix fallback.

    Surfaces and indices are untouched; unknown words that match no
    suffix rule get OTHER.
    """
    tokens = []
    for tok in sentence.tokens:
        tag = lexicon.get(tok.surface)
        if tag is None:
            tag = _suffix_tag(tok.surface)
        tokens.append(replace(tok, pos=tag))
    return Sentence(tuple(tokens), sentence.raw)


def parse_tagged(line: str) -> Sentence:
    """Parse one pre-tagged line of ``token/TAG`` pairs.

    Surfaces are lowercased; the sentence raw text is the detokenized
    surface string (the tag markup is not retained).
    """
    if not line or not line.strip():
        raise DataError("cannot parse empty pre-tagged line")
    surfaces, tags = [], []
    for chunk in line.split():
        token, sep, tag = chunk.rpartition("/")
        if not sep or not token or tag.upper() not in POS_TAGS:
            raise DataError(f"bad token/TAG pair {chunk!r}")
        surfaces.append(token.lower())
        tags.append(tag.upper())
    return Sentence.from_surfaces(surfaces, pos=tags)
