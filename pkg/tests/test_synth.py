from swiftnlp import synth, tokenizer
from swiftnlp.evaluation import entity_spans
from swiftnlp.knowledge import TAGSET, packaged_path


def test_fixtures_regenerate_identically(tmp_path):
    synth.generate_corpora(tmp_path, train=10)
    for name in ("pos_test.conll", "ner_test.conll", "ner_test.txt"):
        assert (tmp_path / name).read_bytes() == packaged_path("corpus", name).read_bytes(), name


def test_text_retokenizes_to_gold_tokens():
    for train in (True, False):
        for sent in synth.Generator(99, train=train).sentences(1500):
            assert tokenizer.tokenize_words(sent.text) == sent.tokens, sent.text


def test_labels_are_well_formed():
    for sent in synth.Generator(3, train=True).sentences(1500):
        assert len(sent.tokens) == len(sent.pos) == len(sent.ner)
        assert set(sent.pos) <= TAGSET
        for label in sent.ner:
            assert label == "O" or label[:2] in ("I-", "B-")
            assert label == "O" or label[2:] in ("PER", "LOC", "ORG", "MISC")
        # B- only ever separates two adjacent phrases of one type
        for i, label in enumerate(sent.ner):
            if label.startswith("B-"):
                assert i > 0 and sent.ner[i - 1][2:] == label[2:]


def test_test_split_holds_unseen_words():
    train_words = {w for s in synth.Generator(1, train=True).sentences(3000) for w in s.tokens}
    test_words = {w for s in synth.Generator(2, train=False).sentences(500) for w in s.tokens}
    assert test_words - train_words


def test_fixture_sizes():
    ner = packaged_path("corpus", "ner_test.conll").read_text().strip().split("\n\n")
    assert len(ner) == 200
    pos_tokens = sum(1 for line in packaged_path("corpus", "pos_test.conll").read_text().splitlines() if line)
    assert pos_tokens >= 5000
    assert sum(len(entity_spans(block.split()[2::3])) for block in ner) > 200


def test_bench_text_is_paragraphs():
    text = synth.bench_text(20, seed=1)
    assert len(text.splitlines()) == 4
    assert text.endswith("\n")
