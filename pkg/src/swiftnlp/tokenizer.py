"""Penn Treebank style tokenization and sentence segmentation.

The scanner is a single left-to-right pass over the text. A compiled
automaton (``_scan``) is used when available; ``_refscan`` is a regex-based
pure-Python equivalent.

Deliberately not implemented, as in the original tool: reordering of
sentence-final abbreviations (``Japan. ...`` stays ``Japan . ...``),
duplicating the period after ``U.S.`` at the end of a sentence, and splitting
contractions without apostrophes (``gimme``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator

from . import _refscan

try:
    from . import _scan as _backend
    COMPILED = True
except ImportError:  # pragma: no cover - depends on the build
    _backend = _refscan
    COMPILED = False


class TokenKind(enum.IntEnum):
    WORD = 0
    NUMBER = 1
    PUNCT = 2
    SYMBOL = 3
    CONTRACTION_PART = 4
    ABBREVIATION = 5


class EncodingError(ValueError):
    """Input bytes are not valid UTF-8."""

    def __init__(self, offset: int, reason: str = "invalid UTF-8"):
        super().__init__(f"{reason} at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    start: int
    end: int
    kind: TokenKind


@dataclass(frozen=True, slots=True)
class Sentence:
    tokens: tuple[Token, ...]
    index: int

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("a sentence needs at least one token")

    @property
    def words(self) -> list[str]:
        return [t.text for t in self.tokens]


def load_abbreviations(path=None) -> frozenset[str]:
    """Read an abbreviation list (one entry per line, ``#`` comments)."""
    if path is None:
        raw = resources.files("swiftnlp").joinpath("data/abbreviations.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    entries = set()
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line)
    return frozenset(entries)


@lru_cache(maxsize=1)
def default_abbreviations() -> frozenset[str]:
    return load_abbreviations()


@dataclass(frozen=True)
class TokenizerConfig:
    abbreviation_set: frozenset[str] = field(default_factory=default_abbreviations)
    split_contractions: bool = True
    mxpost_brackets: bool = False
    segment: bool = True

    def __post_init__(self):
        if not isinstance(self.abbreviation_set, frozenset):
            object.__setattr__(self, "abbreviation_set", frozenset(self.abbreviation_set))
        if self.segment and not self.abbreviation_set:
            raise ValueError("sentence segmentation needs a non-empty abbreviation set")


@lru_cache(maxsize=1)
def _default_config() -> TokenizerConfig:
    return TokenizerConfig()


def decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(exc.start) from exc


def tokenize(text: str | bytes, config: TokenizerConfig | None = None,
             backend=None) -> list[Token]:
    """Split ``text`` into PTB tokens with source offsets.

    Offsets are code-point indices into ``text`` (or into the decoded string
    when bytes are passed). ``backend`` selects a scanner module explicitly.
    """
    if isinstance(text, (bytes, bytearray)):
        text = decode(bytes(text))
    config = config or _default_config()
    scanner = backend or _backend
    texts, starts, ends, kinds = scanner.scan(
        text, config.abbreviation_set, config.mxpost_brackets,
        config.split_contractions, True)
    kind_of = list(TokenKind)
    return [Token(t, s, e, kind_of[k]) for t, s, e, k in zip(texts, starts, ends, kinds)]


def tokenize_words(text: str, config: TokenizerConfig | None = None, backend=None) -> list[str]:
    """Token texts only; the fast path used by the pipeline."""
    config = config or _default_config()
    scanner = backend or _backend
    return scanner.scan(text, config.abbreviation_set, config.mxpost_brackets,
                        config.split_contractions, False)[0]


def sentence_ends(texts: list[str], config: TokenizerConfig | None = None, backend=None) -> list[int]:
    config = config or _default_config()
    scanner = backend or _backend
    return scanner.boundaries(texts, config.abbreviation_set)


def segment_sentences(tokens: list[Token], config: TokenizerConfig | None = None,
                      start_index: int = 0) -> list[Sentence]:
    """Group tokens into sentences.

    A period ends a sentence unless the token before it is an abbreviation
    or acronym; ``?``/``!`` runs always do. Closing quotes and brackets right
    after the terminator stay with the sentence it ends.
    """
    for a, b in zip(tokens, tokens[1:]):
        if b.start < a.end:
            raise ValueError(f"tokens overlap or are out of order at offset {b.start}")
    ends = sentence_ends([t.text for t in tokens], config)
    out = []
    prev = 0
    for idx, end in enumerate(ends, start_index):
        out.append(Sentence(tuple(tokens[prev:end]), idx))
        prev = end
    return out


def split_sentences(text: str, config: TokenizerConfig | None = None, backend=None) -> list[list[str]]:
    """Tokenize and segment in one go, returning lists of token texts."""
    config = config or _default_config()
    scanner = backend or _backend
    texts = scanner.scan(text, config.abbreviation_set, config.mxpost_brackets,
                         config.split_contractions, False)[0]
    if not config.segment:
        return [texts] if texts else []
    ends = scanner.boundaries(texts, config.abbreviation_set)
    out = []
    prev = 0
    for end in ends:
        out.append(texts[prev:end])
        prev = end
    return out


def iter_sentences(chunks: Iterable[str], config: TokenizerConfig | None = None) -> Iterator[list[str]]:
    """Stream sentences from an iterable of text blocks (e.g. paragraphs)."""
    for chunk in chunks:
        yield from split_sentences(chunk, config)
