"""Tokenize, tag, chunk and classify: the end-to-end annotation pipeline."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import tokenizer
from .evaluation import Throughput, entity_spans, measure_throughput
from .knowledge import (
    ENTITY_TYPES,
    EntityType,
    Gazetteer,
    ResourceError,
    TagLexicon,
    TypeProbabilityTable,
    build_tag_lexicon,
    build_type_table,
    default_resource_dir,
    load_gazetteers,
    packaged_path,
    read_conll,
)
from .ner_chunker import ChunkRules, entity_flags, phrases_from_flags
from .ner_classifier import EDGE, EntityModel, PhraseFeatures, featurize, sentence_features, train
from .pos_tagger import PosTagger, SieveConfig

log = logging.getLogger(__name__)

LEXICON_FILE = "lexicon.tsv"
TYPE_TABLE_FILE = "type_table.tsv"
MODEL_FILE = "model.tsv"
GAZETTEER_DIR = "gazetteers"


class Stage(enum.IntEnum):
    TOKENIZE = 1
    POS = 2
    NER = 3

    @classmethod
    def parse(cls, name: str) -> "Stage":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown stage {name!r}") from None


@dataclass
class ResourcePaths:
    lexicon: Path | None = None
    gazetteer_dir: Path | None = None
    type_table: Path | None = None
    model: Path | None = None

    @classmethod
    def defaults(cls, resource_dir=None) -> "ResourcePaths":
        base = Path(resource_dir) if resource_dir else default_resource_dir()
        gaz = base / GAZETTEER_DIR
        return cls(base / LEXICON_FILE, gaz if gaz.is_dir() else packaged_path("gazetteers"),
                   base / TYPE_TABLE_FILE, base / MODEL_FILE)

    def override(self, **paths) -> "ResourcePaths":
        for key, value in paths.items():
            if value is not None:
                setattr(self, key, Path(value))
        return self


@dataclass
class Resources:
    lexicon: TagLexicon | None = None
    gazetteers: dict[str, Gazetteer] | None = None
    type_table: TypeProbabilityTable | None = None
    model: EntityModel | None = None

    @classmethod
    def load(cls, stage: Stage, paths: ResourcePaths | None = None) -> "Resources":
        """Load what ``stage`` needs; a missing file raises naming the path."""
        paths = paths or ResourcePaths.defaults()
        res = cls()
        if stage >= Stage.POS:
            res.lexicon = TagLexicon.load(_require(paths.lexicon, "lexicon"))
        if stage >= Stage.NER:
            gdir = _require(paths.gazetteer_dir, "gazetteer directory")
            res.gazetteers = load_gazetteers(gdir)
            res.type_table = TypeProbabilityTable.load(_require(paths.type_table, "type table"))
            res.model = EntityModel.load(_require(paths.model, "model"))
        return res


def _require(path, what: str) -> Path:
    if path is None:
        raise ResourceError(f"<{what}>", None, f"no {what} configured")
    path = Path(path)
    if not path.exists():
        raise ResourceError(path, None, f"{what} not found")
    return path


@dataclass
class AnnotatedSentence:
    words: list[str]
    pos: list[str] | None = None
    ner: list[str] | None = None


@dataclass
class PipelineConfig:
    stage: Stage = Stage.NER
    sieve: SieveConfig = field(default_factory=SieveConfig)
    tokenizer: tokenizer.TokenizerConfig = field(default_factory=tokenizer.TokenizerConfig)


class Pipeline:
    """Annotates text up to the configured stage.

    POS tags are computed once and reused by the NER stage, so the POS
    column of NER output is identical to POS-stage output.
    """

    def __init__(self, resources: Resources, config: PipelineConfig | None = None):
        self.config = config or PipelineConfig()
        stage = self.config.stage
        if stage >= Stage.POS and resources.lexicon is None:
            raise ValueError("the POS stage needs a lexicon")
        if stage >= Stage.NER and None in (resources.gazetteers, resources.type_table, resources.model):
            raise ValueError("the NER stage needs gazetteers, a type table and a model")
        self.resources = resources
        self.tagger = PosTagger(resources.lexicon, self.config.sieve) if stage >= Stage.POS else None
        self.rules = ChunkRules.from_gazetteers(resources.gazetteers) if stage >= Stage.NER else None

    def sentences(self, text: str) -> list[list[str]]:
        return tokenizer.split_sentences(text, self.config.tokenizer)

    def annotate_tokens(self, sentences: Sequence[Sequence[str]]) -> list[AnnotatedSentence]:
        """Annotate already tokenized sentences."""
        stage = self.config.stage
        if stage == Stage.TOKENIZE:
            return [AnnotatedSentence(list(s)) for s in sentences]
        tags = self.tagger.tag_many(sentences)
        if stage == Stage.POS:
            return [AnnotatedSentence(list(s), t) for s, t in zip(sentences, tags)]
        ner = self.label_entities(sentences, tags)
        return [AnnotatedSentence(list(s), t, n) for s, t, n in zip(sentences, tags, ner)]

    def annotate_text(self, text: str) -> list[AnnotatedSentence]:
        return self.annotate_tokens(self.sentences(text))

    def label_entities(self, sentences: Sequence[Sequence[str]], tags: Sequence[Sequence[str]]) -> list[list[str]]:
        """I-TYPE/O labels; all phrases of the batch are classified in one go."""
        rules, table = self.rules, self.resources.type_table
        labels = []
        found = []
        rows = []
        for idx, (words, pos) in enumerate(zip(sentences, tags)):
            labels.append(["O"] * len(words))
            flags = entity_flags(words, pos, rules)
            if True in flags:
                phrases = phrases_from_flags(words, flags, idx)
                found.extend(phrases)
                rows.extend(f.vector() for f in sentence_features(words, phrases, table))
        if rows:
            predicted = self.resources.model.predict(np.array(rows))
            names = ["I-" + t for t in ENTITY_TYPES]
            for phrase, k in zip(found, predicted.tolist()):
                sent_labels = labels[phrase.token_span[0]]
                sent_labels[phrase.start:phrase.end] = [names[k]] * (phrase.end - phrase.start)
        return labels

    def stream(self, blocks: Iterable[str]) -> Iterator[AnnotatedSentence]:
        for block in blocks:
            yield from self.annotate_text(block)


def paragraphs(lines: Iterable, max_chars: int = 1 << 16) -> Iterator:
    """Group lines (str or bytes) into blank-line separated blocks.

    A block is also cut, at a line boundary, once it reaches ``max_chars``,
    so memory stays bounded for text without blank lines.
    """
    for _, block in located_paragraphs(lines, max_chars):
        yield block


def located_paragraphs(lines: Iterable, max_chars: int = 1 << 16) -> Iterator[tuple[int, object]]:
    """Like :func:`paragraphs`, paired with each block's offset in the input."""
    buf: list = []
    pos = size = start = 0
    for line in lines:
        if not line.strip():
            if buf:
                yield start, buf[0][:0].join(buf)
                buf, size = [], 0
            pos += len(line)
            continue
        if not buf:
            start = pos
        buf.append(line)
        size += len(line)
        pos += len(line)
        if size >= max_chars:
            yield start, buf[0][:0].join(buf)
            buf, size = [], 0
    if buf:
        yield start, buf[0][:0].join(buf)


# -- training and resource building -------------------------------------------

def training_examples(sentences, table: TypeProbabilityTable) -> list[tuple[PhraseFeatures, EntityType]]:
    """Gold phrases with their features, from sentences of CoNLL records."""
    out = []
    for sent in sentences:
        words = [r.token for r in sent]
        n = len(words)
        for start, end, etype in entity_spans([r.ner_tag for r in sent]):
            try:
                label = EntityType[etype]
            except KeyError:
                log.warning("line %s: unknown entity type %r skipped", sent[start].line, etype)
                continue
            context = (words[start - 1] if start else EDGE, words[end] if end < n else EDGE)
            out.append((featurize(words[start:end], context, table), label))
    return out


def build_resources(corpus, outdir, l2: float = 1.0) -> ResourcePaths:
    """Build lexicon, type table and model from one annotated CoNLL file."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sentences = list(read_conll(corpus))
    paths = ResourcePaths(outdir / LEXICON_FILE, packaged_path("gazetteers"),
                          outdir / TYPE_TABLE_FILE, outdir / MODEL_FILE)
    build_tag_lexicon(sentences).save(paths.lexicon)
    table = build_type_table(r for s in sentences for r in s)
    table.save(paths.type_table)
    train(training_examples(sentences, table), l2=l2, trained_on=Path(corpus).name).save(paths.model)
    return paths


# -- benchmarking ---------------------------------------------------------------

def count_words(blocks: Iterable[str]) -> int:
    return sum(len(b.split()) for b in blocks)


def benchmark(pipeline: Pipeline, blocks: Sequence[str], repetitions: int = 5,
              min_seconds: float = 1.0) -> Throughput:
    """Throughput in whitespace words of streaming ``blocks`` through ``pipeline``.

    Output is consumed and discarded sentence by sentence, so memory does
    not grow with the input.
    """
    def run(data):
        for _ in pipeline.stream(data):
            pass
    return measure_throughput(run, blocks, count_words(blocks), repetitions, min_seconds)
