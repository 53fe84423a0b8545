"""Command-line entry point: annotate text, build resources, evaluate, benchmark."""

from __future__ import annotations

import argparse
import io
import logging
import multiprocessing
import sys
from pathlib import Path
from typing import Iterable, Iterator, TextIO

import numpy as np

from . import synth, tokenizer
from .evaluation import (
    EvalReport,
    PRF,
    confusion_matrix,
    entity_f1,
    entity_type,
    ner_error_breakdown,
    token_accuracy,
)
from .knowledge import (
    ENTITY_TYPES,
    GAZETTEER_NAMES,
    RESOURCE_ENV,
    ResourceError,
    build_gazetteer,
    build_tag_lexicon,
    build_type_table,
    load_gazetteers,
    read_conll,
    TypeProbabilityTable,
)
from .ner_chunker import ChunkRules, entity_flags
from .ner_classifier import train
from .pipeline import (
    AnnotatedSentence,
    Pipeline,
    PipelineConfig,
    ResourcePaths,
    Resources,
    Stage,
    benchmark,
    build_resources,
    located_paragraphs,
    paragraphs,
    training_examples,
)
from .pos_tagger import PRESETS, SieveConfig

log = logging.getLogger("swiftnlp")

PROG = "swiftnlp"
FORMATS = ("conll", "tsv", "plain")


class CliError(Exception):
    """A failure reported as ``swiftnlp: error: <kind>: <message>``."""

    def __init__(self, kind: str, message: str, code: int = 1):
        super().__init__(message)
        self.kind = kind
        self.code = code


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, 2)


def diagnostic(kind: str, message: str) -> str:
    return f"{PROG}: error: {kind}: {' '.join(str(message).split())}"


# -- output formats -----------------------------------------------------------

def format_sentence(sent: AnnotatedSentence, fmt: str, index: int = 0) -> str:
    cols = [c for c in (sent.words, sent.pos, sent.ner) if c is not None]
    rows = list(zip(*cols))
    if fmt == "conll":
        return "".join(" ".join(r) + "\n" for r in rows) + "\n"
    if fmt == "tsv":
        return "".join(f"{index}\t{i}\t" + "\t".join(r) + "\n" for i, r in enumerate(rows))
    if fmt == "plain":
        return " ".join("_".join(r) for r in rows) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def tsv_header(stage: Stage) -> str:
    names = ["sentence", "index", "token", "pos", "ner"][:2 + int(stage)]
    return "\t".join(names) + "\n"


# -- run ----------------------------------------------------------------------

def _pipeline_config(args, stage: Stage | None = None) -> PipelineConfig:
    sieve = SieveConfig(args.threshold, PRESETS[args.preset])
    tok = tokenizer.TokenizerConfig(split_contractions=not args.no_split_contractions,
                                    mxpost_brackets=args.mxpost)
    return PipelineConfig(stage or Stage.parse(args.stage), sieve, tok)


def _resource_paths(args) -> ResourcePaths:
    return ResourcePaths.defaults(args.resource_dir).override(
        lexicon=args.lexicon, gazetteer_dir=args.gazetteer_dir,
        type_table=args.type_table, model=args.model)


def decoded_blocks(stream, on_error: str) -> Iterator[str]:
    """Paragraphs of a binary stream, decoded one at a time.

    An invalid block either aborts the run or is skipped with a warning,
    depending on ``on_error``.
    """
    for offset, block in located_paragraphs(stream):
        try:
            yield block.decode("utf-8")
        except UnicodeDecodeError as exc:
            where = offset + exc.start
            if on_error == "abort":
                raise CliError("encoding", f"invalid UTF-8 at byte offset {where}") from None
            print(f"{PROG}: warning: encoding: invalid UTF-8 at byte offset {where}; "
                  f"skipped {len(block)} bytes", file=sys.stderr)


def pretokenized_blocks(lines: Iterable[str], size: int = 1000) -> Iterator[list[list[str]]]:
    batch = []
    for line in lines:
        words = line.split()
        if words:
            batch.append(words)
        if len(batch) >= size:
            yield batch
            batch = []
    if batch:
        yield batch


_worker: Pipeline | None = None


def _init_worker(paths: ResourcePaths, config: PipelineConfig) -> None:
    global _worker
    _worker = Pipeline(Resources.load(config.stage, paths), config)


def _work_text(block: str) -> list[AnnotatedSentence]:
    return _worker.annotate_text(block)


def _work_tokens(batch: list[list[str]]) -> list[AnnotatedSentence]:
    return _worker.annotate_tokens(batch)


def run_stream(args, instream, out: TextIO) -> int:
    config = _pipeline_config(args)
    paths = _resource_paths(args)
    if args.pretokenized:
        text = io.TextIOWrapper(instream, encoding="utf-8", newline="")
        work, items = _work_tokens, pretokenized_blocks(text)
    else:
        work, items = _work_text, decoded_blocks(instream, args.on_encoding_error)
    if args.threads > 1:
        pool = multiprocessing.Pool(args.threads, _init_worker, (paths, config))
        results = pool.imap(work, items)  # imap keeps input order
    else:
        pool = None
        _init_worker(paths, config)
        results = map(work, items)
    count = 0
    try:
        if args.format == "tsv":
            out.write(tsv_header(config.stage))
        for sentences in results:
            for sent in sentences:
                out.write(format_sentence(sent, args.format, count))
                count += 1
    finally:
        if pool is not None:
            pool.terminate()
    out.flush()
    log.info("annotated %d sentences", count)
    return 0


def cmd_run(args) -> int:
    if args.threads < 1:
        raise CliError("usage", "--threads must be at least 1", 2)
    instream = open(args.input, "rb") if args.input else sys.stdin.buffer
    out = open(args.output, "w", encoding="utf-8", newline="\n") if args.output else sys.stdout
    try:
        return run_stream(args, instream, out)
    finally:
        if args.input:
            instream.close()
        if args.output:
            out.close()


def cmd_chunk(args) -> int:
    """CoNLL with a POS column in, the same rows plus an I/O chunk column out."""
    paths = _resource_paths(args)
    rules = ChunkRules.from_gazetteers(load_gazetteers(paths.gazetteer_dir))
    source = args.input or io.TextIOWrapper(sys.stdin.buffer, encoding="utf-8")
    out = sys.stdout
    for sent in read_conll(source):
        words = [r.token for r in sent]
        flags = entity_flags(words, [r.pos_tag for r in sent], rules)
        for rec, flag in zip(sent, flags):
            out.write(f"{rec.token} {rec.pos_tag} {'I' if flag else 'O'}\n")
        out.write("\n")
    return 0


# -- resource building --------------------------------------------------------

def cmd_build_lexicon(args) -> int:
    rejected: list = []
    lexicon = build_tag_lexicon(read_conll(args.corpus), rejected=rejected if args.skip_bad else None)
    for line, tag in rejected:
        print(f"{PROG}: warning: {args.corpus}:{line}: unknown tag {tag!r}; sentence skipped", file=sys.stderr)
    lexicon.save(args.output)
    print(f"lexicon\t{args.output}\twords={len(lexicon.uni)}")
    return 0


def cmd_build_gazetteer(args) -> int:
    with open(args.words, encoding="utf-8") as fh:
        words = [line for line in fh if not line.startswith("#")]
    gaz = build_gazetteer(args.name, words, match_case=not args.ignore_case)
    gaz.save(args.output)
    print(f"gazetteer\t{args.output}\tentries={len(gaz)}")
    return 0


def cmd_build_type_table(args) -> int:
    records = (r for s in read_conll(args.corpus) for r in s)
    table = build_type_table(records, args.floor)
    table.save(args.output)
    print(f"type_table\t{args.output}\twords={len(table.probs)}\tskipped={table.skipped}")
    return 0


def cmd_train_model(args) -> int:
    if not 0 <= args.heldout < 1:
        raise CliError("usage", "--heldout must be in [0, 1)", 2)
    table = TypeProbabilityTable.load(args.type_table)
    sentences = list(read_conll(args.corpus))
    # deterministic split: every k-th sentence is held out
    k = round(1 / args.heldout) if args.heldout else 0
    held = [s for i, s in enumerate(sentences) if k and i % k == k - 1]
    fit = [s for i, s in enumerate(sentences) if not (k and i % k == k - 1)]
    model = train(training_examples(fit, table), l2=args.l2, max_iter=args.max_iter,
                  tol=args.tol, trained_on=Path(args.corpus).name)
    model.save(args.output)
    print(f"model\t{args.output}\texamples={len(fit)} sentences")
    if held:
        examples = training_examples(held, table)
        if examples:
            pred = model.predict(np.array([f.vector() for f, _ in examples]))
            gold = [int(label) for _, label in examples]
            report = EvalReport(token_accuracy(list(pred), gold), _per_class(gold, list(pred)))
            print(f"heldout\tphrases={len(examples)}\taccuracy={report.accuracy:.4f}")
            for name, s in report.per_class.items():
                print(f"heldout\t{name}\tprecision={s.precision:.4f}\trecall={s.recall:.4f}\tf1={s.f1:.4f}")
    return 0


def _per_class(gold: list[int], pred: list[int]) -> dict[str, PRF]:
    out = {}
    for k, name in enumerate(ENTITY_TYPES):
        correct = sum(1 for g, p in zip(gold, pred) if g == p == k)
        out[name] = PRF.from_counts(correct, pred.count(k), gold.count(k))
    return out


def cmd_build_resources(args) -> int:
    paths = build_resources(args.corpus, args.output, l2=args.l2)
    for name in ("lexicon", "type_table", "model"):
        print(f"{name}\t{getattr(paths, name)}")
    return 0


def cmd_synth(args) -> int:
    for name, path in synth.generate_corpora(args.output, args.train, args.pos_test, args.ner_test).items():
        print(f"{name}\t{path}")
    return 0


# -- evaluation ---------------------------------------------------------------

def _columns(path, column: int) -> list[list[str]]:
    out = []
    for sent in read_conll(path):
        out.append([r.pos_tag if column == 1 else r.ner_tag for r in sent])
    return out


def _two_column_file(path) -> tuple[list[str], list[str]]:
    """Gold and predicted labels from the last two columns of one file."""
    gold, pred = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            cols = line.split()
            if not cols or cols[0] == "-DOCSTART-":
                continue
            if len(cols) < 3:
                raise ResourceError(path, lineno, "expected token, gold and predicted columns")
            gold.append(cols[-2])
            pred.append(cols[-1])
    return gold, pred


def evaluate(task: str, gold: list[str], pred: list[str]) -> tuple[EvalReport, list[str]]:
    """Score aligned label sequences; returns the report and summary lines."""
    if len(gold) != len(pred):
        raise CliError("evaluate", f"gold has {len(gold)} tokens but prediction has {len(pred)}")
    acc = token_accuracy(pred, gold)
    if task == "pos":
        labels, matrix = confusion_matrix(gold, pred)
        per = {lab: PRF.from_counts(
            sum(1 for g, p in zip(gold, pred) if g == p == lab), pred.count(lab), gold.count(lab))
            for lab in labels}
        report = EvalReport(acc, per, (labels, matrix))
        return report, [f"tokens {len(gold)}  accuracy {acc:.4f}"]
    overall, per = entity_f1(pred, gold)
    per = {"overall": overall, **per}
    g_types = [entity_type(x) for x in gold]
    p_types = [entity_type(x) for x in pred]
    report = EvalReport(acc, per, confusion_matrix(g_types, p_types))
    errors = ner_error_breakdown(gold, pred)
    lines = [f"tokens {len(gold)}  phrases {overall.gold}  found {overall.predicted}  correct {overall.correct}",
             f"accuracy {acc:.4f}  precision {overall.precision:.4f}  recall {overall.recall:.4f}  "
             f"F1 {overall.f1:.4f}"]
    for name, s in per.items():
        if name != "overall":
            lines.append(f"{name:>8}: precision {s.precision:.4f}  recall {s.recall:.4f}  "
                         f"F1 {s.f1:.4f}  found {s.predicted}")
    lines.append(f"token errors: chunking {errors.chunking}  classification {errors.classification}")
    return report, lines


def cmd_evaluate(args) -> int:
    column = 1 if args.task == "pos" else 2
    if args.pred:
        gold = [x for s in _columns(args.gold, column) for x in s]
        pred = [x for s in _columns(args.pred, column) for x in s]
    else:
        gold, pred = _two_column_file(args.gold)
    report, lines = evaluate(args.task, gold, pred)
    print("\n".join(lines))
    if args.tsv:
        Path(args.tsv).write_text(report.to_tsv(), encoding="utf-8")
    return 0


# -- benchmark ----------------------------------------------------------------

def bench_blocks(args) -> list[str]:
    if args.input:
        with open(args.input, "rb") as fh:
            return list(decoded_blocks(fh, "abort"))
    lines = []
    words = 0
    seed = args.seed
    while words < args.words:
        text = synth.bench_text(4000, seed)
        lines.extend(text.splitlines(keepends=True))
        words += len(text.split())
        seed += 1
    return list(paragraphs(lines, args.block_chars))


def cmd_bench(args) -> int:
    if args.bench_reps < 1:
        raise CliError("usage", "--bench-reps must be at least 1", 2)
    stages = list(Stage) if args.stage == "all" else [Stage.parse(args.stage)]
    blocks = bench_blocks(args)
    paths = _resource_paths(args)
    print("stage\twords\tmean_seconds\twords_per_second\treliable")
    for stage in stages:
        config = _pipeline_config(args, stage)
        pipe = Pipeline(Resources.load(stage, paths), config)
        result = benchmark(pipe, blocks, args.bench_reps, args.min_seconds)
        print(f"{stage.name.lower()}\t{result.units}\t{result.mean_seconds:.4f}\t"
              f"{result.per_second:.0f}\t{'yes' if result.reliable else 'no'}", flush=True)
    return 0


# -- parser ---------------------------------------------------------------------

def _add_resource_flags(p) -> None:
    p.add_argument("--resource-dir", help=f"directory with default resources (env {RESOURCE_ENV})")
    p.add_argument("--lexicon", help="POS lexicon file")
    p.add_argument("--gazetteer-dir", help=f"directory with {', '.join(GAZETTEER_NAMES)} .txt files")
    p.add_argument("--type-table", help="entity type probability table")
    p.add_argument("--model", help="entity classifier model")


def _add_pipeline_flags(p, stage_choices) -> None:
    p.add_argument("--stage", default="ner", choices=stage_choices)
    p.add_argument("--preset", default="tri", choices=sorted(PRESETS), help="sieve set for POS tagging")
    p.add_argument("--threshold", type=float, default=0.95, help="certainty threshold for the first sieve")
    p.add_argument("--no-split-contractions", action="store_true")
    p.add_argument("--mxpost", action="store_true", help="emit literal brackets instead of -LRB-/-RRB-")
    _add_resource_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = Parser(prog=PROG, description="Fast English tokenizer, POS tagger and named entity recognizer.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("run", help="annotate text from stdin or a file")
    _add_pipeline_flags(p, ["tokenize", "pos", "ner"])
    p.add_argument("--format", default="conll", choices=FORMATS)
    p.add_argument("--threads", type=int, default=1, help="worker processes (output order is preserved)")
    p.add_argument("--pretokenized", action="store_true", help="input is one whitespace-tokenized sentence per line")
    p.add_argument("--on-encoding-error", default="abort", choices=["abort", "skip"])
    p.add_argument("-i", "--input", help="input file (default stdin)")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("chunk", help="mark entity words in CoNLL input that has a POS column")
    p.add_argument("-i", "--input", help="CoNLL file (default stdin)")
    _add_resource_flags(p)
    p.set_defaults(func=cmd_chunk)

    p = sub.add_parser("build-lexicon", help="count tag frequencies from a POS-annotated CoNLL file")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--skip-bad", action="store_true", help="skip sentences with unknown tags instead of failing")
    p.set_defaults(func=cmd_build_lexicon)

    p = sub.add_parser("build-gazetteer", help="compile a word list into a gazetteer file")
    p.add_argument("name")
    p.add_argument("words", help="one entry per line")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--ignore-case", action="store_true")
    p.set_defaults(func=cmd_build_gazetteer)

    p = sub.add_parser("build-type-table", help="estimate P(type | word) from an NER-annotated CoNLL file")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--floor", type=float, default=1e-6, help="probability floor before taking logs")
    p.set_defaults(func=cmd_build_type_table)

    p = sub.add_parser("train-model", help="train the entity classifier on gold phrases")
    p.add_argument("corpus")
    p.add_argument("--type-table", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--l2", type=float, default=1.0)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--heldout", type=float, default=0.1, help="fraction of sentences held out for the report")
    p.set_defaults(func=cmd_train_model)

    p = sub.add_parser("build-resources", help="build lexicon, type table and model from one corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--l2", type=float, default=1.0)
    p.set_defaults(func=cmd_build_resources)

    p = sub.add_parser("synth", help="generate the synthetic training and test corpora")
    p.add_argument("output", help="output directory")
    p.add_argument("--train", type=int, default=12000)
    p.add_argument("--pos-test", type=int, default=800)
    p.add_argument("--ner-test", type=int, default=200)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("evaluate", help="score predictions against gold CoNLL data")
    p.add_argument("gold", help="gold CoNLL file, or one file with gold and predicted as the last two columns")
    p.add_argument("pred", nargs="?", help="predicted CoNLL file aligned with gold")
    p.add_argument("--task", default="ner", choices=["pos", "ner"])
    p.add_argument("--tsv", help="also write a machine-readable report here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="measure throughput of each stage")
    _add_pipeline_flags(p, ["all", "tokenize", "pos", "ner"])
    p.set_defaults(stage="all")
    p.add_argument("--input", help="text file to process (default: generated text)")
    p.add_argument("--words", type=int, default=2_000_000, help="size of generated input")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--block-chars", type=int, default=1 << 16, help="characters per streamed block")
    p.add_argument("--bench-reps", type=int, default=5)
    p.add_argument("--min-seconds", type=float, default=1.0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format=f"{PROG}: %(levelname)s: %(message)s")
        return args.func(args)
    except CliError as exc:
        print(diagnostic(exc.kind, exc), file=sys.stderr)
        return exc.code
    except ResourceError as exc:
        print(diagnostic("resource", exc), file=sys.stderr)
        return 1
    except (tokenizer.EncodingError, UnicodeDecodeError) as exc:
        print(diagnostic("encoding", exc), file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1
    except (ValueError, OSError) as exc:
        print(diagnostic(type(exc).__name__, exc), file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130
