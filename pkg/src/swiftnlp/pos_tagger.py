"""Part-of-speech tagging by a cascade of dictionary sieves.

Sieves run in a fixed order, each as one left-to-right pass over the
sentence. A tag, once assigned, is final:

    CERTAIN  token's dominant tag covers more than the threshold of its uses
    TRI      most frequent tag given the (already known) left and right tags
    BI       most frequent tag given the known left tag
    UNI      most frequent tag of the token
    BACKOFF  suffix rules for tokens the lexicon has never seen

Sentence edges count as a known neighbour tag (``BOUNDARY``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .knowledge import BOUNDARY, CompiledLexicon, TagLexicon

UNKNOWN = "UNKNOWN"


class Sieve(enum.IntEnum):
    CERTAIN = 1
    TRI = 2
    BI = 3
    UNI = 4
    BACKOFF = 5


PRESETS = {
    "uni": (Sieve.CERTAIN, Sieve.UNI, Sieve.BACKOFF),
    "bi": (Sieve.CERTAIN, Sieve.BI, Sieve.UNI, Sieve.BACKOFF),
    "tri": tuple(Sieve),
}


@dataclass(frozen=True)
class SieveConfig:
    certainty_threshold: float = 0.95
    enabled_sieves: tuple[Sieve, ...] = tuple(Sieve)

    def __post_init__(self):
        if not 0.0 < self.certainty_threshold <= 1.0:
            raise ValueError(f"certainty_threshold must be in (0, 1], got {self.certainty_threshold}")
        sieves = tuple(sorted({Sieve(s) for s in self.enabled_sieves}))
        if Sieve.BACKOFF not in sieves:
            raise ValueError("the BACKOFF sieve cannot be disabled")
        object.__setattr__(self, "enabled_sieves", sieves)

    @classmethod
    def preset(cls, name: str, certainty_threshold: float = 0.95) -> "SieveConfig":
        try:
            sieves = PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
        return cls(certainty_threshold, sieves)


@dataclass(frozen=True, slots=True)
class TagAssignment:
    tag: str
    source_sieve: Sieve | None


# Ordered suffix/shape rules for unseen tokens; first match wins.
BACKOFF_RULES: list[tuple[Callable[[str], object], str]] = [
    (re.compile(r"[-+]?(?:\d|\.\d)[\d.,:/-]*").fullmatch, "CD"),
    (lambda t: t.endswith("ing"), "VBG"),
    (lambda t: t.endswith("ed"), "VBD"),
    (lambda t: t.endswith("ly"), "RB"),
    (lambda t: t.endswith("est"), "JJS"),
    (lambda t: len(t) > 3 and t.endswith("s"), "NNS"),
    (lambda t: t[:1].isupper(), "NNP"),
]


@lru_cache(maxsize=1 << 16)
def regex_backoff(token: str) -> str:
    """Guess a tag for a token absent from the lexicon."""
    for matches, tag in BACKOFF_RULES:
        if matches(token):
            return tag
    return "NN"


def _words(tokens: Sequence) -> list[str]:
    return [t if isinstance(t, str) else t.text for t in tokens]


def cascade(words: Sequence[str], tables: CompiledLexicon, sieves: tuple[Sieve, ...],
            sources: list | None = None) -> list[str]:
    """Run the enabled sieves over one sentence; return one tag per word.

    When ``sources`` is a list it receives the sieve that fixed each tag.
    """
    n = len(words)
    if Sieve.CERTAIN in sieves:
        certain = tables.certain
        tags = [certain.get(w) for w in words]
    else:
        tags = [None] * n
    if sources is not None:
        sources[:] = [Sieve.CERTAIN if t is not None else None for t in tags]
    pending = [i for i in range(n) if tags[i] is None]
    if not pending:
        return tags
    last = n - 1

    if Sieve.TRI in sieves:
        tri = tables.tri
        for i in pending:
            left = tags[i - 1] if i else BOUNDARY
            right = tags[i + 1] if i < last else BOUNDARY
            if left is not None and right is not None:
                tag = tri.get((words[i], left, right))
                if tag is not None:
                    tags[i] = tag
                    if sources is not None:
                        sources[i] = Sieve.TRI
        pending = [i for i in pending if tags[i] is None]

    if Sieve.BI in sieves and pending:
        bi = tables.bi
        for i in pending:
            left = tags[i - 1] if i else BOUNDARY
            if left is not None:
                tag = bi.get((words[i], left))
                if tag is not None:
                    tags[i] = tag
                    if sources is not None:
                        sources[i] = Sieve.BI
        pending = [i for i in pending if tags[i] is None]

    if Sieve.UNI in sieves and pending:
        uni = tables.uni
        for i in pending:
            tag = uni.get(words[i])
            if tag is not None:
                tags[i] = tag
                if sources is not None:
                    sources[i] = Sieve.UNI
        pending = [i for i in pending if tags[i] is None]

    for i in pending:
        tags[i] = regex_backoff(words[i])
        if sources is not None:
            sources[i] = Sieve.BACKOFF
    return tags


def tag_sentence(tokens: Sequence, lexicon: TagLexicon,
                 config: SieveConfig | None = None) -> list[TagAssignment]:
    """Tag one sentence (strings or Token objects)."""
    config = config or SieveConfig()
    words = _words(tokens)
    if not words:
        raise ValueError("cannot tag an empty sentence")
    sources: list = []
    tags = cascade(words, lexicon.compiled(config.certainty_threshold), config.enabled_sieves, sources)
    return [TagAssignment(t, s) for t, s in zip(tags, sources)]


class PosTagger:
    """A lexicon bound to a sieve configuration, for repeated tagging."""

    def __init__(self, lexicon: TagLexicon, config: SieveConfig | None = None):
        self.lexicon = lexicon
        self.config = config or SieveConfig()
        self._tables = lexicon.compiled(self.config.certainty_threshold)
        self._sieves = self.config.enabled_sieves

    def tag(self, words: Sequence[str]) -> list[str]:
        if not words:
            return []
        return cascade(words, self._tables, self._sieves)

    def tag_many(self, sentences) -> list[list[str]]:
        tables, sieves = self._tables, self._sieves
        return [cascade(s, tables, sieves) if s else [] for s in sentences]
