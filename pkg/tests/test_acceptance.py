"""The eight acceptance criteria, one test each, one PASS/FAIL line each."""

import random

import numpy as np
import pytest

from helpers import load_tokenizer_gold
from oracles import reference_scores, reference_tags
from swiftnlp import synth, tokenizer
from swiftnlp.evaluation import (
    confusion_matrix,
    entity_f1,
    entity_type,
    ner_error_breakdown,
    token_accuracy,
)
from swiftnlp.knowledge import (
    GAZETTEER_NAMES,
    TagLexicon,
    TypeProbabilityTable,
    load_gazetteer,
    packaged_path,
    read_conll,
)
from swiftnlp.ner_classifier import EntityModel, softmax, train
from swiftnlp.pipeline import Pipeline, PipelineConfig, Resources, Stage, benchmark, paragraphs
from swiftnlp.pos_tagger import SieveConfig, tag_sentence
from test_evaluation import random_pair
from test_ner_classifier import accuracy, gradient_error, random_problem, separable_toy
from test_pos_tagger import oracle_cases
from test_tokenizer import BACKENDS


@pytest.fixture
def report(capsys):
    def emit(n: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {title}: {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def resources():
    return Resources.load(Stage.NER)


def test_1_tokenizer_fixture(report):
    cases = load_tokenizer_gold()
    sentences = sum(len(c.sentences) for c in cases)
    total = correct = 0
    for backend in BACKENDS:
        for case in cases:
            config = tokenizer.TokenizerConfig(mxpost_brackets=case.mxpost)
            got = [t.text for t in tokenizer.tokenize(case.text, config, backend=backend)]
            total += 1
            correct += got == case.tokens
    ok = sentences >= 60 and correct == total
    report(1, "tokenizer gold suite", ok,
           f"{len(cases)} cases, {sentences} sentences, {correct}/{total} exact over {len(BACKENDS)} backends")


def test_2_sieve_oracle(report):
    cases = list(oracle_cases())
    mismatches = 0
    for lex, threshold, sieves, words in cases:
        got = [(a.tag, a.source_sieve) for a in tag_sentence(words, lex, SieveConfig(threshold, sieves))]
        mismatches += got != reference_tags(words, lex, threshold, sieves)
    longest = max(len(c[3]) for c in cases)
    report(2, "sieves equal literal reference", len(cases) >= 1000 and longest <= 5 and mismatches == 0,
           f"{len(cases)} sentences (length <= {longest}), {mismatches} mismatches")


def test_3_sieve_ordering(report, resources):
    gold = list(read_conll(packaged_path("corpus", "pos_test.conll")))
    words = [[r.token for r in s] for s in gold]
    flat = [r.pos_tag for s in gold for r in s]
    acc = {}
    for preset in ("uni", "bi", "tri"):
        pipe = Pipeline(resources, PipelineConfig(Stage.POS, SieveConfig.preset(preset)))
        acc[preset] = token_accuracy([t for s in pipe.annotate_tokens(words) for t in s.pos], flat)
    ok = len(flat) >= 5000 and acc["tri"] >= acc["bi"] >= acc["uni"] and acc["uni"] < acc["tri"]
    report(3, "Tri >= Bi >= Uni accuracy", ok,
           f"{len(flat)} tokens, uni {acc['uni']:.4f}, bi {acc['bi']:.4f}, tri {acc['tri']:.4f}")


def test_4_classifier(report):
    rng = np.random.default_rng(2013)
    worst = max(gradient_error(*random_problem(rng)) for _ in range(50))
    toy = separable_toy()
    toy_acc = accuracy(train(toy, require_all_classes=False), toy)
    sums = softmax(rng.normal(scale=50, size=(1000, 4))).sum(axis=1)
    drift = float(np.abs(sums - 1).max())
    ok = worst < 1e-5 and toy_acc == 1.0 and drift <= 1e-9
    report(4, "gradient, separable toy, softmax", ok,
           f"max relative gradient error {worst:.2e}, toy accuracy {toy_acc:.0%}, max |sum-1| {drift:.1e}")


def test_5_scorer_oracle(report):
    rng = random.Random(5)
    mismatches = 0
    for _ in range(1000):
        pred, gold = random_pair(rng)
        overall, per = entity_f1(pred, gold)
        ref, ref_per = reference_scores(pred, gold)
        mine = ((overall.correct, overall.predicted, overall.gold),
                {t: (s.correct, s.predicted, s.gold) for t, s in per.items()})
        mismatches += mine != (ref, ref_per)
    report(5, "entity_f1 equals brute-force oracle", mismatches == 0, f"1000 sequences, {mismatches} mismatches")


def test_6_ner_fixture(report, resources):
    gold_sents = list(read_conll(packaged_path("corpus", "ner_test.conll")))
    gold = [r.ner_tag for s in gold_sents for r in s]
    text = packaged_path("corpus", "ner_test.txt").read_text(encoding="utf-8")
    out = Pipeline(resources).annotate_text(text)
    words = [w for s in out for w in s.words]
    pred = [lab for s in out for lab in s.ner]
    assert words == [r.token for s in gold_sents for r in s], "pipeline tokens do not align with gold"
    overall, _ = entity_f1(pred, gold)
    labels, m = confusion_matrix([entity_type(x) for x in gold], [entity_type(x) for x in pred])
    org_loc = m[labels.index("ORG")][labels.index("LOC")] if {"ORG", "LOC"} <= set(labels) else 0
    errors = ner_error_breakdown(gold, pred)
    ok = len(gold_sents) == 200 and overall.f1 >= 0.70 and org_loc > 0 and errors.chunking > errors.classification
    report(6, "synthetic NER fixture", ok,
           f"F1 {overall.f1:.4f}, ORG->LOC tokens {org_loc}, "
           f"chunking errors {errors.chunking} vs classification errors {errors.classification}")


def bench_input(min_words: int) -> list[str]:
    lines, words, seed = [], 0, 100
    while words < min_words:
        text = synth.bench_text(4000, seed)
        lines.extend(text.splitlines(keepends=True))
        words += len(text.split())
        seed += 1
    return list(paragraphs(lines))


def test_7_throughput(report, resources):
    probe = bench_input(300_000)
    tok = Pipeline(resources, PipelineConfig(Stage.TOKENIZE))
    rate = benchmark(tok, probe, repetitions=1, min_seconds=0).per_second
    blocks = bench_input(int(rate * 1.3))  # every stage then runs >= 1 s per repetition
    rates = {}
    reliable = True
    for stage in Stage:
        result = benchmark(Pipeline(resources, PipelineConfig(stage)), blocks, repetitions=5)
        rates[stage] = result.per_second
        reliable &= result.reliable
    single = benchmark(tok, blocks, repetitions=5)
    double = benchmark(tok, blocks + blocks, repetitions=5)
    ratio = double.mean_seconds / single.mean_seconds
    ok = (reliable and rates[Stage.TOKENIZE] >= 2.0e6 and rates[Stage.POS] >= 3.0e5
          and rates[Stage.NER] >= 1.5e5 and rates[Stage.TOKENIZE] > rates[Stage.POS] > rates[Stage.NER]
          and 1.5 <= ratio <= 3.0)
    report(7, "throughput (words/s, 5-run mean)", ok,
           f"{single.units} words, tokenize {rates[Stage.TOKENIZE]:,.0f}, pos {rates[Stage.POS]:,.0f}, "
           f"ner {rates[Stage.NER]:,.0f}, 2x time ratio {ratio:.2f}, all runs >= 1 s: {reliable}")


def test_8_round_trips(report, tmp_path):
    same = {}

    def check(name, load, path):
        obj = load(path)
        obj.save(tmp_path / f"{name}.a")
        load(tmp_path / f"{name}.a").save(tmp_path / f"{name}.b")
        first = (tmp_path / f"{name}.a").read_bytes()
        same[name] = first == (tmp_path / f"{name}.b").read_bytes()

    res = packaged_path("resources")
    check("lexicon", TagLexicon.load, res / "lexicon.tsv")
    check("type_table", TypeProbabilityTable.load, res / "type_table.tsv")
    check("model", EntityModel.load, res / "model.tsv")
    for name in GAZETTEER_NAMES:
        check(name, load_gazetteer, packaged_path("gazetteers", f"{name}.txt"))
    report(8, "save-load-save byte identity", all(same.values()),
           ", ".join(f"{k} {'ok' if v else 'DIFFERS'}" for k, v in same.items()))
