import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reference_tags
from swiftnlp.knowledge import BOUNDARY, TAGSET, TagLexicon
from swiftnlp.pos_tagger import (
    PRESETS,
    UNKNOWN,
    PosTagger,
    Sieve,
    SieveConfig,
    regex_backoff,
    tag_sentence,
)

FIXTURE = TagLexicon(
    uni={"the": {"DT": 100}, "dog": {"NN": 8, "VB": 2}},
    bi={},
    tri={("dog", "DT", BOUNDARY): {"NN": 1}},
)


def test_hand_executed_cascade():
    out = tag_sentence(["the", "dog"], FIXTURE)
    assert [(a.tag, a.source_sieve) for a in out] == [("DT", Sieve.CERTAIN), ("NN", Sieve.TRI)]


def test_single_certain_token():
    out = tag_sentence(["the"], TagLexicon(uni={"the": {"DT": 100}}))
    assert [(a.tag, a.source_sieve) for a in out] == [("DT", Sieve.CERTAIN)]


def test_empty_sentence_is_an_error():
    with pytest.raises(ValueError):
        tag_sentence([], FIXTURE)


@pytest.mark.parametrize("token, tag", [
    ("blorfing", "VBG"), ("15.75", "CD"), ("Xqzptlk", "NNP"), ("flurn", "NN"),
    ("1,000", "CD"), ("-3", "CD"), ("frobbed", "VBD"), ("quickly", "RB"),
    ("grandest", "JJS"), ("zorks", "NNS"), ("bus", "NN"), ("Zorks", "NNS"),
])
def test_backoff_rules(token, tag):
    assert regex_backoff(token) == tag


def test_threshold_is_strict():
    lex = TagLexicon(uni={"dog": {"NN": 95, "VB": 5}})
    assert tag_sentence(["dog"], lex, SieveConfig(0.95))[0].source_sieve == Sieve.UNI
    assert tag_sentence(["dog"], lex, SieveConfig(0.94))[0].source_sieve == Sieve.CERTAIN


def test_config_validation():
    with pytest.raises(ValueError):
        SieveConfig(0.0)
    with pytest.raises(ValueError):
        SieveConfig(1.5)
    with pytest.raises(ValueError):
        SieveConfig(0.9, (Sieve.CERTAIN, Sieve.UNI))
    assert SieveConfig(0.9, (Sieve.BACKOFF, Sieve.UNI, Sieve.UNI)).enabled_sieves == (Sieve.UNI, Sieve.BACKOFF)
    with pytest.raises(ValueError, match="preset"):
        SieveConfig.preset("quad")


def test_presets():
    assert SieveConfig.preset("uni").enabled_sieves == (Sieve.CERTAIN, Sieve.UNI, Sieve.BACKOFF)
    assert Sieve.TRI not in SieveConfig.preset("bi").enabled_sieves
    assert SieveConfig.preset("tri").enabled_sieves == tuple(Sieve)


def test_left_neighbour_tagged_in_same_pass_counts():
    lex = TagLexicon(
        uni={"a": {"DT": 1, "NN": 1}, "b": {"NN": 1, "VB": 1}},
        bi={("a", BOUNDARY): {"DT": 1}, ("b", "DT"): {"VB": 1}},
    )
    out = tag_sentence(["a", "b"], lex)
    assert [(a.tag, a.source_sieve) for a in out] == [("DT", Sieve.BI), ("VB", Sieve.BI)]


def test_right_neighbour_known_later_falls_through():
    # b's right neighbour is tagged by BI, after the single TRI pass
    lex = TagLexicon(
        uni={"a": {"DT": 1, "NN": 1}, "b": {"NN": 1, "VB": 1}},
        bi={("a", BOUNDARY): {"DT": 1}},
        tri={("b", BOUNDARY, "DT"): {"VB": 1}},
    )
    out = tag_sentence(["b", "a"], lex)
    assert out[0].source_sieve == Sieve.UNI


# -- oracle equivalence ---------------------------------------------------------

WORDS = ["the", "dog", "run", "fast", "Blue", "x"]
TOY_TAGS = ["DT", "NN", "VB", "JJ", "RB"]


def random_lexicon(rng: random.Random) -> TagLexicon:
    context = TOY_TAGS + [BOUNDARY]

    def counts():
        picked = rng.sample(TOY_TAGS, rng.randint(1, 3))
        return {t: rng.choice([1, 1, 2, 5, 20, 100]) for t in picked}

    uni = {w: counts() for w in WORDS[:-1] if rng.random() < 0.85}
    bi = {(w, p): counts() for w in WORDS for p in context if rng.random() < 0.3}
    tri = {(w, p, n): counts() for w in WORDS for p in context for n in context if rng.random() < 0.15}
    return TagLexicon(uni, bi, tri)


def oracle_cases(n_lexicons: int = 20, per_lexicon: int = 50, seed: int = 1234):
    rng = random.Random(seed)
    vocab = WORDS + ["zorking", "Qwx", "12"]
    for _ in range(n_lexicons):
        lex = random_lexicon(rng)
        threshold = rng.choice([0.5, 0.8, 0.95, 1.0])
        sieves = rng.choice(list(PRESETS.values()) + [(Sieve.TRI, Sieve.BACKOFF), (Sieve.BACKOFF,)])
        for _ in range(per_lexicon):
            words = [rng.choice(vocab) for _ in range(rng.randint(1, 5))]
            yield lex, threshold, sieves, words


def test_sieves_match_literal_reference():
    cases = list(oracle_cases())
    assert len(cases) == 1000
    mismatches = 0
    for lex, threshold, sieves, words in cases:
        got = [(a.tag, a.source_sieve) for a in tag_sentence(words, lex, SieveConfig(threshold, sieves))]
        mismatches += got != reference_tags(words, lex, threshold, sieves)
    assert mismatches == 0


# -- properties -----------------------------------------------------------------

toy_sentences = st.lists(st.sampled_from(WORDS + ["zorking", "Qwx"]), min_size=1, max_size=8)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10_000), toy_sentences, st.sampled_from(sorted(PRESETS)))
def test_totality_and_sieve_order(seed, words, preset):
    lex = random_lexicon(random.Random(seed))
    out = tag_sentence(words, lex, SieveConfig.preset(preset))
    assert len(out) == len(words)
    for a in out:
        assert a.tag != UNKNOWN and a.tag in TAGSET
        assert a.source_sieve in SieveConfig.preset(preset).enabled_sieves


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10_000), toy_sentences, toy_sentences)
def test_certain_tokens_ignore_context(seed, left, right):
    lex = random_lexicon(random.Random(seed))
    compiled = lex.compiled(0.95)
    for word, tag in compiled.certain.items():
        out = tag_sentence(left + [word] + right, lex)
        assert out[len(left)].tag == tag
        assert out[len(left)].source_sieve == Sieve.CERTAIN


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000), toy_sentences)
def test_later_sieves_never_rewrite(seed, words):
    """Disabling a later sieve leaves every earlier assignment in place."""
    lex = random_lexicon(random.Random(seed))
    full = tag_sentence(words, lex, SieveConfig())
    for cut in (Sieve.TRI, Sieve.BI, Sieve.UNI):
        partial = tag_sentence(words, lex, SieveConfig(0.95, [s for s in Sieve if s < cut] + [Sieve.BACKOFF]))
        for a, b in zip(full, partial):
            if b.source_sieve < cut:
                assert a == b


def test_tagger_object_matches_tag_sentence():
    lex = random_lexicon(random.Random(5))
    tagger = PosTagger(lex, SieveConfig.preset("bi"))
    sents = [["the", "dog", "run"], [], ["x", "Blue"]]
    assert tagger.tag_many(sents) == [
        [a.tag for a in tag_sentence(s, lex, SieveConfig.preset("bi"))] if s else [] for s in sents]
