"""Lexical and statistical resources: tag lexicons, gazetteers, type tables.

Every resource has a plain-text format with a deterministic writer, so that
``save(load(save(x)))`` reproduces the same bytes.
"""

from __future__ import annotations

import enum
import logging
import math
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

log = logging.getLogger(__name__)

TAGSET = frozenset("""
    CC CD DT EX FW IN JJ JJR JJS LS MD NN NNS NNP NNPS PDT POS PRP PRP$ RB RBR
    RBS RP SYM TO UH VB VBD VBG VBN VBP VBZ WDT WP WP$ WRB # $ '' ( ) , . : ``
""".split())
TAG_ALIASES = {"-LRB-": "(", "-RRB-": ")"}
BOUNDARY = "<S>"

RESOURCE_ENV = "SWIFTNLP_RESOURCES"


class EntityType(enum.IntEnum):
    PER = 0
    LOC = 1
    ORG = 2
    MISC = 3


ENTITY_TYPES = tuple(t.name for t in EntityType)
UNIFORM = (0.25, 0.25, 0.25, 0.25)


class ResourceError(ValueError):
    """A resource or corpus file could not be read."""

    def __init__(self, path, line: int | None, message: str):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = str(path)
        self.line = line


def canonical_tag(tag: str) -> str | None:
    """Return the tagset member for ``tag`` (resolving bracket aliases), or None."""
    tag = TAG_ALIASES.get(tag, tag)
    return tag if tag in TAGSET else None


def best_tag(counts: dict[str, int]) -> str:
    """Most frequent tag; ties go to the lexicographically smallest tag."""
    return min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def default_resource_dir() -> Path:
    override = os.environ.get(RESOURCE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("swiftnlp").joinpath("data/resources")))


def packaged_path(*parts: str) -> Path:
    return Path(str(resources.files("swiftnlp").joinpath("data", *parts)))


# -- corpus reading --------------------------------------------------------

class AnnotatedCorpusRecord(NamedTuple):
    token: str
    pos_tag: str
    ner_tag: str = "O"
    line: int | None = None


def read_conll(source: str | Path | Iterable[str]) -> Iterator[list[AnnotatedCorpusRecord]]:
    """Yield sentences from CoNLL column data.

    Columns are token, POS and (when present) NER as the last column; a
    4-column file carries a chunk column in between which is ignored.
    ``-DOCSTART-`` lines are skipped. The column count must not vary.
    """
    name = "<stream>"
    if isinstance(source, (str, Path)):
        name = str(source)
        try:
            fh = open(source, encoding="utf-8")
        except OSError as exc:
            raise ResourceError(source, None, exc.strerror or "cannot open") from exc
        with fh:
            yield from _read_conll_lines(fh, name)
    else:
        yield from _read_conll_lines(source, name)


def _read_conll_lines(lines: Iterable[str], name: str) -> Iterator[list[AnnotatedCorpusRecord]]:
    width = None
    sent: list[AnnotatedCorpusRecord] = []
    for lineno, raw in enumerate(lines, 1):
        cols = raw.split()
        if not cols:
            if sent:
                yield sent
                sent = []
            continue
        if cols[0] == "-DOCSTART-":
            continue
        if width is None:
            width = len(cols)
            if width < 2:
                raise ResourceError(name, lineno, "need at least token and POS columns")
        elif len(cols) != width:
            raise ResourceError(name, lineno, f"expected {width} columns, got {len(cols)}")
        ner = cols[-1] if width >= 3 else "O"
        sent.append(AnnotatedCorpusRecord(cols[0], cols[1], ner, lineno))
    if sent:
        yield sent


# -- tag lexicon -------------------------------------------------------------

@dataclass
class TagLexicon:
    uni: dict[str, dict[str, int]] = field(default_factory=dict)
    bi: dict[tuple[str, str], dict[str, int]] = field(default_factory=dict)
    tri: dict[tuple[str, str, str], dict[str, int]] = field(default_factory=dict)
    _compiled: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    tagset = TAGSET

    def ratio(self, token: str) -> float:
        """Dominant-tag frequency over all occurrences of ``token``."""
        counts = self.uni[token]
        return max(counts.values()) / sum(counts.values())

    def compiled(self, threshold: float) -> "CompiledLexicon":
        """Argmax tables used by the tagger, cached per threshold."""
        tables = self._compiled.get(threshold)
        if tables is None:
            certain = {}
            for tok, counts in self.uni.items():
                total = sum(counts.values())
                tag = best_tag(counts)
                if counts[tag] / total > threshold:
                    certain[tok] = tag
            tables = CompiledLexicon(
                certain=certain,
                uni={tok: best_tag(c) for tok, c in self.uni.items()},
                bi={key: best_tag(c) for key, c in self.bi.items()},
                tri={key: best_tag(c) for key, c in self.tri.items()},
            )
            self._compiled[threshold] = tables
        return tables

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("#uni\n")
            for tok in sorted(self.uni):
                for tag, n in sorted(self.uni[tok].items()):
                    fh.write(f"{tok}\t{tag}\t{n}\n")
            fh.write("#bi\n")
            for key in sorted(self.bi):
                for tag, n in sorted(self.bi[key].items()):
                    fh.write("\t".join(key) + f"\t{tag}\t{n}\n")
            fh.write("#tri\n")
            for key in sorted(self.tri):
                for tag, n in sorted(self.tri[key].items()):
                    fh.write("\t".join(key) + f"\t{tag}\t{n}\n")

    @classmethod
    def load(cls, path) -> "TagLexicon":
        lex = cls()
        tables = {"#uni": (lex.uni, 3), "#bi": (lex.bi, 4), "#tri": (lex.tri, 5)}
        table = width = None
        for lineno, line in _lines(path):
            if "\t" not in line and line in tables:
                table, width = tables[line]
                continue
            if table is None:
                raise ResourceError(path, lineno, "row before the first section header")
            cols = line.split("\t")
            if len(cols) != width:
                raise ResourceError(path, lineno, f"expected {width} columns, got {len(cols)}")
            *key, tag, count = cols
            if tag not in TAGSET:
                raise ResourceError(path, lineno, f"unknown tag {tag!r}")
            for ctx in key[1:]:
                if ctx not in TAGSET and ctx != BOUNDARY:
                    raise ResourceError(path, lineno, f"unknown context tag {ctx!r}")
            try:
                n = int(count)
            except ValueError:
                n = 0
            if n <= 0:
                raise ResourceError(path, lineno, f"count must be a positive integer, got {count!r}")
            k = key[0] if width == 3 else tuple(key)
            counts = table.setdefault(k, {})
            if tag in counts:
                raise ResourceError(path, lineno, f"duplicate row for tag {tag!r}")
            counts[tag] = n
        return lex


@dataclass(frozen=True)
class CompiledLexicon:
    certain: dict[str, str]
    uni: dict[str, str]
    bi: dict[tuple[str, str], str]
    tri: dict[tuple[str, str, str], str]


def build_tag_lexicon(sentences: Iterable[Sequence], rejected: list | None = None) -> TagLexicon:
    """Count Uni/Bi/Tri tag frequencies over gold-tagged sentences.

    Each sentence is a sequence of ``(token, tag)`` pairs or
    :class:`AnnotatedCorpusRecord`. A sentence holding a tag outside the
    tagset raises :class:`ResourceError`, or, when ``rejected`` is a list, is
    skipped and ``(line, tag)`` appended to it.
    """
    uni: dict = defaultdict(Counter)
    bi: dict = defaultdict(Counter)
    tri: dict = defaultdict(Counter)
    for sent in sentences:
        tags = []
        bad = None
        for rec in sent:
            tag = canonical_tag(rec[1])
            if tag is None:
                bad = (getattr(rec, "line", None), rec[1])
                break
            tags.append(tag)
        if bad is not None:
            if rejected is None:
                raise ResourceError("<corpus>", bad[0], f"unknown tag {bad[1]!r}")
            log.warning("skipping sentence with unknown tag %r (line %s)", bad[1], bad[0])
            rejected.append(bad)
            continue
        n = len(tags)
        for i, rec in enumerate(sent):
            tok, tag = rec[0], tags[i]
            prev = tags[i - 1] if i > 0 else BOUNDARY
            nxt = tags[i + 1] if i + 1 < n else BOUNDARY
            uni[tok][tag] += 1
            bi[tok, prev][tag] += 1
            tri[tok, prev, nxt][tag] += 1
    return TagLexicon(
        uni={k: dict(v) for k, v in uni.items()},
        bi={k: dict(v) for k, v in bi.items()},
        tri={k: dict(v) for k, v in tri.items()},
    )


# -- gazetteers ---------------------------------------------------------------

_CASE_DIRECTIVE = "#!match_case="


@dataclass(frozen=True)
class Gazetteer:
    name: str
    entries: frozenset[str]
    match_case: bool = True

    def __post_init__(self):
        entries = frozenset(self.entries)
        if any(not e for e in entries):
            raise ValueError(f"gazetteer {self.name!r} has an empty entry")
        if not self.match_case:
            entries = frozenset(e.lower() for e in entries)
        object.__setattr__(self, "entries", entries)

    def __contains__(self, word: str) -> bool:
        if self.match_case:
            return word in self.entries
        return word.lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{_CASE_DIRECTIVE}{str(self.match_case).lower()}\n")
            for entry in sorted(self.entries):
                fh.write(entry + "\n")


def load_gazetteer(path, name: str | None = None) -> Gazetteer:
    """Read a gazetteer: one entry per line, ``#`` comments.

    A ``#!match_case=false`` line makes lookups case-insensitive.
    Duplicate entries collapse silently.
    """
    match_case = True
    entries = set()
    for lineno, line in _lines(path):
        if line.startswith(_CASE_DIRECTIVE):
            value = line[len(_CASE_DIRECTIVE):].strip().lower()
            if value not in ("true", "false"):
                raise ResourceError(path, lineno, f"bad match_case value {value!r}")
            match_case = value == "true"
        elif line.startswith("#"):
            continue
        else:
            entries.add(line.strip())
    return Gazetteer(name or Path(path).stem, frozenset(entries), match_case)


def build_gazetteer(name: str, words: Iterable[str], match_case: bool = True) -> Gazetteer:
    return Gazetteer(name, frozenset(w.strip() for w in words if w.strip()), match_case)


GAZETTEER_NAMES = ("demonyms", "sports", "titles", "calendar")


def load_gazetteers(directory=None) -> dict[str, Gazetteer]:
    """Load the four standard gazetteers from ``directory`` (default: bundled)."""
    directory = Path(directory) if directory else packaged_path("gazetteers")
    out = {}
    for name in GAZETTEER_NAMES:
        path = directory / f"{name}.txt"
        if not path.exists():
            raise ResourceError(path, None, "missing gazetteer file")
        out[name] = load_gazetteer(path, name)
    return out


# -- P(Type | word) ---------------------------------------------------------

@dataclass
class TypeProbabilityTable:
    probs: dict[str, tuple[float, float, float, float]] = field(default_factory=dict)
    smoothing_floor: float = 1e-6
    skipped: int = field(default=0, compare=False)
    _logs: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def lookup(self, word: str) -> tuple[float, float, float, float]:
        return self.probs.get(word, UNIFORM)

    def log_lookup(self, word: str) -> tuple[float, float, float, float]:
        """Per-type ``log(max(P, floor))``; cached per word."""
        cached = self._logs.get(word)
        if cached is None:
            floor = self.smoothing_floor
            cached = tuple(math.log(max(p, floor)) for p in self.lookup(word))
            if word in self.probs:
                self._logs[word] = cached
        return cached

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"#floor\t{self.smoothing_floor!r}\n")
            for word in sorted(self.probs):
                fh.write(word + "\t" + "\t".join(repr(p) for p in self.probs[word]) + "\n")

    @classmethod
    def load(cls, path) -> "TypeProbabilityTable":
        table = cls()
        for lineno, line in _lines(path):
            cols = line.split("\t")
            if lineno == 1 and cols[0] == "#floor" and len(cols) == 2:
                table.smoothing_floor = _float(cols[1], path, lineno)
                continue
            if len(cols) != 5:
                raise ResourceError(path, lineno, f"expected 5 columns, got {len(cols)}")
            probs = tuple(_float(c, path, lineno) for c in cols[1:])
            if any(p < 0 or p > 1 for p in probs) or abs(sum(probs) - 1.0) > 1e-9:
                raise ResourceError(path, lineno, "probabilities must lie in [0, 1] and sum to 1")
            table.probs[cols[0]] = probs
        return table


def build_type_table(records: Iterable, smoothing_floor: float = 1e-6) -> TypeProbabilityTable:
    """Estimate P(type | word) from ``(token, label)`` records.

    Labels may be bare types, IOB labels (``I-LOC``, ``B-ORG``) or ``O``.
    Malformed records are skipped and counted in ``table.skipped``.
    """
    counts: dict[str, list[int]] = {}
    skipped = 0
    for rec in records:
        try:
            if isinstance(rec, AnnotatedCorpusRecord):
                token, label = rec.token, rec.ner_tag
            else:
                token, label = rec
        except (TypeError, ValueError):
            skipped += 1
            continue
        if not isinstance(token, str) or not token or not isinstance(label, str):
            skipped += 1
            continue
        if label == "O":
            continue
        etype = label[2:] if label[:2] in ("I-", "B-") else label
        if etype not in ENTITY_TYPES:
            skipped += 1
            continue
        counts.setdefault(token, [0, 0, 0, 0])[EntityType[etype]] += 1
    if skipped:
        log.warning("type table: skipped %d malformed records", skipped)
    probs = {}
    for word, c in counts.items():
        total = sum(c)
        probs[word] = tuple(n / total for n in c)
    return TypeProbabilityTable(probs, smoothing_floor, skipped)


# -- helpers -----------------------------------------------------------------

def _lines(path) -> Iterator[tuple[int, str]]:
    """Non-blank lines with 1-based line numbers."""
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(path, None, exc.strerror or "cannot open") from exc
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if line.strip():
                yield lineno, line


def _float(text: str, path, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ResourceError(path, lineno, f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ResourceError(path, lineno, f"not finite: {text!r}")
    return value
