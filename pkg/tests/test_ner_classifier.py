import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import numeric_gradient
from swiftnlp.knowledge import EntityType, ResourceError, TypeProbabilityTable
from swiftnlp.ner_classifier import (
    EDGE,
    FEATURE_NAMES,
    EntityModel,
    PhraseFeatures,
    classify,
    featurize,
    gradient,
    hessian,
    objective,
    sentence_features,
    softmax,
    train,
)
from swiftnlp.ner_chunker import EntityPhrase

TABLE = TypeProbabilityTable({
    "Green": (0.6, 0.1, 0.2, 0.1),
    "New": (0.05, 0.8, 0.1, 0.05),
    "York": (0.0, 0.9, 0.1, 0.0),
    "Mr.": (0.97, 0.01, 0.01, 0.01),
})
LOG_Q = math.log(0.25)


def test_single_word_phi():
    f = featurize(["Green"], (EDGE, EDGE), TABLE)
    assert f.phi[EntityType.PER] == pytest.approx(math.log(0.6))


def test_two_word_phi():
    f = featurize(["New", "York"], (EDGE, EDGE), TABLE)
    assert f.phi[EntityType.LOC] == pytest.approx(math.log(0.72))


def test_context_psi():
    f = featurize(["Green"], ("Mr.", EDGE), TABLE)
    assert f.psi[EntityType.PER] == pytest.approx(math.log(0.97) + LOG_Q)


def test_zero_probability_is_floored():
    f = featurize(["York"], (EDGE, EDGE), TABLE)
    assert f.phi[EntityType.PER] == pytest.approx(math.log(1e-6))
    assert all(math.isfinite(v) for v in f.vector())


def test_unknown_words_are_uniform():
    f = featurize(["Zork", "Blub"], ("the", "said"), TABLE)
    assert f.phi == pytest.approx((2 * LOG_Q,) * 4)
    assert f.psi == pytest.approx((2 * LOG_Q,) * 4)


def test_empty_phrase_is_an_error():
    with pytest.raises(ValueError):
        featurize([], (EDGE, EDGE), TABLE)


def test_phrase_object_and_sentence_context():
    words = ["Mr.", "Green", "met", "New", "York"]
    phrases = [EntityPhrase((0, 1, 2), ("Green",)), EntityPhrase((0, 3, 5), ("New", "York"))]
    f1, f2 = sentence_features(words, phrases, TABLE)
    assert f1 == featurize(["Green"], ("Mr.", "met"), TABLE)
    assert f2 == featurize(phrases[1], ("met", EDGE), TABLE)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(["Green", "New", "York", "Mr.", "Zork"]), min_size=1, max_size=6),
       st.integers(1, 5))
def test_phi_decomposes_over_words(words, cut):
    cut = min(cut, len(words))
    whole = featurize(words, (EDGE, EDGE), TABLE).phi
    if cut == len(words):
        parts = [featurize(words, (EDGE, EDGE), TABLE).phi]
    else:
        parts = [featurize(words[:cut], (EDGE, EDGE), TABLE).phi, featurize(words[cut:], (EDGE, EDGE), TABLE).phi]
    assert whole == pytest.approx(tuple(sum(p[i] for p in parts) for i in range(4)))


# -- model ------------------------------------------------------------------------

def test_zero_model_is_uniform_and_picks_per():
    label, probs = classify(featurize(["Green"], (EDGE, EDGE), TABLE), EntityModel())
    assert label is EntityType.PER
    assert probs == pytest.approx([0.25] * 4)


def test_identity_phi_model_follows_phi():
    w = np.zeros((4, 9))
    w[:, :4] = np.eye(4)
    model = EntityModel(w)
    assert classify(featurize(["Green"], (EDGE, EDGE), TABLE), model)[0] is EntityType.PER
    assert classify(featurize(["New", "York"], (EDGE, EDGE), TABLE), model)[0] is EntityType.LOC


@settings(max_examples=300, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=4, max_size=4))
def test_softmax_normalized(scores):
    p = softmax(np.array(scores))
    assert abs(p.sum() - 1.0) <= 1e-9
    assert np.all(p >= 0)


def test_model_shape_and_finiteness():
    with pytest.raises(ValueError):
        EntityModel(np.zeros((3, 9)))
    with pytest.raises(ValueError):
        EntityModel(np.full((4, 9), np.nan))


def test_model_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    model = EntityModel(rng.normal(size=(4, 9)), "toy corpus")
    model.save(tmp_path / "a.tsv")
    again = EntityModel.load(tmp_path / "a.tsv")
    assert again == model
    again.save(tmp_path / "b.tsv")
    assert (tmp_path / "a.tsv").read_bytes() == (tmp_path / "b.tsv").read_bytes()
    header = (tmp_path / "a.tsv").read_text().splitlines()[1].split("\t")
    assert header == ["class", *FEATURE_NAMES]
    assert FEATURE_NAMES[0] == "phi_PER" and FEATURE_NAMES[7] == "psi_MISC"


@pytest.mark.parametrize("body, message", [
    ("class\tphi_PER\n", "header"),
    ("PER\t" + "\t".join(["0"] * 9) + "\n", "before the header"),
    ("class\t" + "\t".join(FEATURE_NAMES) + "\nPER\t1\n", "columns"),
    ("class\t" + "\t".join(FEATURE_NAMES) + "\n", "missing"),
])
def test_model_load_errors(tmp_path, body, message):
    path = tmp_path / "m.tsv"
    path.write_text(body)
    with pytest.raises(ResourceError, match=message):
        EntityModel.load(path)


# -- training -----------------------------------------------------------------------

def random_problem(rng, n=None):
    n = n or int(rng.integers(2, 12))
    X = rng.normal(size=(n, 9)) * rng.uniform(0.1, 5)
    X[:, 8] = 1.0
    y = rng.integers(0, 4, size=n)
    W = rng.normal(size=(4, 9))
    return W, X, y, float(rng.uniform(0, 2))


def gradient_error(W, X, y, l2) -> float:
    analytic = gradient(W, X, y, l2)
    numeric = numeric_gradient(lambda V: objective(V, X, y, l2), W.copy())
    return float(np.linalg.norm(analytic - numeric) / max(np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-12))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(42)
    errors = [gradient_error(*random_problem(rng)) for _ in range(50)]
    assert max(errors) < 1e-5


def test_hessian_matches_finite_differences_of_gradient():
    rng = np.random.default_rng(7)
    W, X, y, l2 = random_problem(rng)
    H = hessian(W, X, l2)
    h = 1e-6
    for k in range(W.size):
        E = np.zeros(W.size)
        E[k] = h
        col = (gradient(W + E.reshape(W.shape), X, y, l2) - gradient(W - E.reshape(W.shape), X, y, l2)) / (2 * h)
        assert np.allclose(H[:, k], col.ravel(), atol=1e-5)


def feats(vec):
    return PhraseFeatures(tuple(vec[:4]), tuple(vec[4:8]))


def separable_toy():
    out = []
    for i in range(4):
        out.append((feats([-0.1 * i, -3, -3, -3, LOG_Q, LOG_Q, LOG_Q, LOG_Q]), EntityType.PER))
        out.append((feats([-3, -0.1 * i, -3, -3, LOG_Q, LOG_Q, LOG_Q, LOG_Q]), EntityType.LOC))
    return out


def accuracy(model, examples):
    X = np.array([f.vector() for f, _ in examples])
    return float(np.mean(model.predict(X) == [int(t) for _, t in examples]))


def test_separable_toy_reaches_full_accuracy():
    examples = separable_toy()
    model = train(examples, require_all_classes=False)
    assert accuracy(model, examples) == 1.0


def test_missing_class_is_named():
    with pytest.raises(ValueError, match="ORG"):
        train(separable_toy())


def test_conflicting_duplicates():
    f = feats([-1, -1, -1, -1, LOG_Q, LOG_Q, LOG_Q, LOG_Q])
    examples = [(f, t) for t in EntityType] * 2
    model = train(examples)
    assert accuracy(model, examples) < 1.0
    assert np.linalg.norm(gradient(model.weights, np.array([f.vector()] * 8),
                                   np.array([int(t) for _, t in examples]), 1.0)) < 1e-4


def test_huge_l2_gives_uniform_predictions():
    rng = np.random.default_rng(3)
    examples = [(feats(rng.normal(size=8)), EntityType(i % 4)) for i in range(40)]
    model = train(examples, l2=1e9)
    assert np.abs(model.weights).max() < 1e-6
    assert model.predict_proba(np.array([examples[0][0].vector()])) == pytest.approx(np.full((1, 4), 0.25))


def test_non_finite_features_rejected():
    bad = feats([float("-inf")] + [0.0] * 7)
    rejected = []
    model = train([(bad, EntityType.PER)] + separable_toy(), require_all_classes=False, rejected=rejected)
    assert rejected == [0]
    assert np.all(np.isfinite(model.weights))


def test_training_reaches_the_optimum():
    rng = np.random.default_rng(11)
    examples = [(feats(rng.normal(size=8) - 1), EntityType(int(rng.integers(0, 4)))) for _ in range(200)]
    model = train(examples)
    X = np.array([f.vector() for f, _ in examples])
    y = np.array([int(t) for _, t in examples])
    assert np.linalg.norm(gradient(model.weights, X, y, 1.0)) < 1e-4 * len(y)
    f0 = objective(model.weights, X, y, 1.0)
    for _ in range(20):
        assert objective(model.weights + rng.normal(size=(4, 9)) * 1e-3, X, y, 1.0) <= f0


def test_training_is_deterministic():
    examples = separable_toy()
    a = train(examples, require_all_classes=False)
    b = train(examples, require_all_classes=False)
    assert np.array_equal(a.weights, b.weights)


def test_label_permutation_equivariance():
    rng = np.random.default_rng(5)
    examples = [(feats(rng.normal(size=8) - 1), EntityType(int(rng.integers(0, 4)))) for _ in range(120)]
    perm = [2, 0, 3, 1]  # class k is renamed perm[k]
    renamed = [(f, EntityType(perm[int(t)])) for f, t in examples]
    a = train(examples)
    b = train(renamed)
    X = np.array([f.vector() for f, _ in examples])
    pa, pb = a.predict_proba(X), b.predict_proba(X)
    assert np.allclose(pb[:, perm], pa, atol=1e-6)
