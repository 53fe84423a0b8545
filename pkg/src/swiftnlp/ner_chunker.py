"""Entity phrase detection from POS tags and word lists.

A token is an entity word when it is a demonym, or when it is tagged
NNP/NNPS and is not a calendar term, sport, job title or single capital
letter. The conjunctions ``&``, ``de`` and ``of`` join two entity words.
Maximal runs of entity words become phrases; only I/O tags are produced.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .knowledge import EntityType, Gazetteer

CONJUNCTIONS = frozenset({"&", "de", "of"})
PROPER_TAGS = frozenset({"NNP", "NNPS"})


class ChunkTag(str, enum.Enum):
    I = "I"  # noqa: E741
    O = "O"  # noqa: E741


@dataclass(frozen=True, slots=True)
class EntityPhrase:
    token_span: tuple[int, int, int]  # sentence index, start, end (exclusive)
    words: tuple[str, ...]
    label: EntityType | None = None

    def __post_init__(self):
        _, start, end = self.token_span
        if end <= start:
            raise ValueError(f"empty phrase span {self.token_span}")
        if len(self.words) != end - start:
            raise ValueError("phrase words do not match its span")

    @property
    def start(self) -> int:
        return self.token_span[1]

    @property
    def end(self) -> int:
        return self.token_span[2]

    def labelled(self, label: EntityType) -> "EntityPhrase":
        return EntityPhrase(self.token_span, self.words, label)


@dataclass(frozen=True)
class ChunkRules:
    """The word lists the chunker consults."""

    demonyms: Gazetteer
    exclusions: tuple[Gazetteer, ...]

    @classmethod
    def from_gazetteers(cls, gazetteers: Mapping[str, Gazetteer]) -> "ChunkRules":
        missing = {"demonyms", "sports", "titles", "calendar"} - set(gazetteers)
        if missing:
            raise ValueError(f"missing gazetteers: {', '.join(sorted(missing))}")
        return cls(gazetteers["demonyms"],
                   (gazetteers["calendar"], gazetteers["sports"], gazetteers["titles"]))

    def is_entity_word(self, token: str, pos_tag: str) -> bool:
        if token in CONJUNCTIONS:
            return False
        if token in self.demonyms:
            return True
        if pos_tag not in PROPER_TAGS:
            return False
        if len(token) == 1 and token.isupper():
            return False
        for gaz in self.exclusions:
            if token in gaz:
                return False
        return True


def _rules(gazetteers) -> ChunkRules:
    return gazetteers if isinstance(gazetteers, ChunkRules) else ChunkRules.from_gazetteers(gazetteers)


def is_entity_word(token: str, pos_tag: str, gazetteers) -> bool:
    """Context-free entity test (demonym, or unexcluded proper noun)."""
    return _rules(gazetteers).is_entity_word(token, pos_tag)


def entity_flags(words: Sequence[str], tags: Sequence[str], rules: ChunkRules) -> list[bool]:
    if len(words) != len(tags):
        raise ValueError(f"{len(words)} tokens but {len(tags)} POS tags")
    flags = [rules.is_entity_word(w, t) for w, t in zip(words, tags)]
    # conjunctions join two entity words found by the first pass
    last = len(words) - 1
    for i in range(1, last):
        if words[i] in CONJUNCTIONS and flags[i - 1] and flags[i + 1] \
                and words[i - 1] not in CONJUNCTIONS and words[i + 1] not in CONJUNCTIONS:
            flags[i] = True
    return flags


def phrases_from_flags(words: Sequence[str], flags: Sequence[bool],
                       sentence_index: int = 0) -> list[EntityPhrase]:
    out = []
    i, n = 0, len(flags)
    while i < n:
        if flags[i]:
            j = i + 1
            while j < n and flags[j]:
                j += 1
            out.append(EntityPhrase((sentence_index, i, j), tuple(words[i:j])))
            i = j
        else:
            i += 1
    return out


def chunk(tokens: Sequence, pos_tags: Sequence[str], gazetteers,
          sentence_index: int = 0) -> tuple[list[ChunkTag], list[EntityPhrase]]:
    """Mark entity words and group maximal runs into phrases."""
    words = [t if isinstance(t, str) else t.text for t in tokens]
    flags = entity_flags(words, pos_tags, _rules(gazetteers))
    io = [ChunkTag.I if f else ChunkTag.O for f in flags]
    return io, phrases_from_flags(words, flags, sentence_index)
