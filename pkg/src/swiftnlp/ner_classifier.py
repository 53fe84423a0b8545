"""Entity typing with a multinomial logistic regression over 8 features.

For each type T the phrase feature is ``sum_k log P(T | w_k)`` over the
phrase words, and the context feature is
``log P(T | w_before) + log P(T | w_after)``. Probabilities are floored
before the log; unseen and edge words count as uniform.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .knowledge import ENTITY_TYPES, EntityType, ResourceError, TypeProbabilityTable

log = logging.getLogger(__name__)

EDGE = None  # sentence edge marker for context words
N_CLASSES = len(EntityType)
FEATURE_NAMES = tuple(f"phi_{t}" for t in ENTITY_TYPES) + tuple(f"psi_{t}" for t in ENTITY_TYPES) + ("bias",)
LOG_UNIFORM = (math.log(0.25),) * N_CLASSES


@dataclass(frozen=True, slots=True)
class PhraseFeatures:
    phi: tuple[float, float, float, float]
    psi: tuple[float, float, float, float]

    def vector(self) -> list[float]:
        return [*self.phi, *self.psi, 1.0]


def _context_logs(word, table: TypeProbabilityTable):
    return LOG_UNIFORM if word is EDGE else table.log_lookup(word)


def featurize(phrase, context: tuple, table: TypeProbabilityTable) -> PhraseFeatures:
    """Log-domain phrase and context factors.

    ``phrase`` is an :class:`EntityPhrase` or a sequence of words;
    ``context`` is ``(w_before, w_after)`` with ``EDGE`` at sentence edges.
    """
    words = getattr(phrase, "words", phrase)
    if not words:
        raise ValueError("cannot featurize an empty phrase")
    p0 = p1 = p2 = p3 = 0.0
    for w in words:
        a, b, c, d = table.log_lookup(w)
        p0 += a
        p1 += b
        p2 += c
        p3 += d
    before, after = context
    b = _context_logs(before, table)
    a = _context_logs(after, table)
    psi = (b[0] + a[0], b[1] + a[1], b[2] + a[2], b[3] + a[3])
    return PhraseFeatures((p0, p1, p2, p3), psi)


def sentence_features(words: Sequence[str], phrases, table: TypeProbabilityTable) -> list[PhraseFeatures]:
    """Features of every phrase of one sentence, with one word of context each side."""
    n = len(words)
    return [featurize(p, (words[p.start - 1] if p.start > 0 else EDGE,
                          words[p.end] if p.end < n else EDGE), table)
            for p in phrases]


def softmax(scores: np.ndarray) -> np.ndarray:
    """Row-wise softmax, stable for large scores."""
    z = scores - scores.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass
class EntityModel:
    weights: np.ndarray = field(default_factory=lambda: np.zeros((N_CLASSES, 9)))
    trained_on: str = ""

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.shape != (N_CLASSES, 9):
            raise ValueError(f"weights must be {N_CLASSES}x9, got {self.weights.shape}")
        if not np.all(np.isfinite(self.weights)):
            raise ValueError("model weights must be finite")

    def __eq__(self, other):
        if not isinstance(other, EntityModel):
            return NotImplemented
        return self.trained_on == other.trained_on and np.array_equal(self.weights, other.weights)

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return softmax(np.asarray(X, dtype=np.float64) @ self.weights.T)

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Class indices; ties resolve to the earliest class in PER, LOC, ORG, MISC."""
        if len(X) == 0:
            return np.zeros(0, dtype=np.intp)
        return np.argmax(np.asarray(X, dtype=np.float64) @ self.weights.T, axis=1)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"#trained_on\t{self.trained_on}\n")
            fh.write("class\t" + "\t".join(FEATURE_NAMES) + "\n")
            for name, row in zip(ENTITY_TYPES, self.weights):
                fh.write(name + "\t" + "\t".join(repr(float(v)) for v in row) + "\n")

    @classmethod
    def load(cls, path) -> "EntityModel":
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise ResourceError(path, None, exc.strerror or "cannot open") from exc
        trained_on = ""
        rows = {}
        header_seen = False
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                continue
            cols = line.split("\t")
            if cols[0] == "#trained_on":
                trained_on = "\t".join(cols[1:])
            elif cols[0] == "class":
                if tuple(cols[1:]) != FEATURE_NAMES:
                    raise ResourceError(path, lineno, "unexpected feature header")
                header_seen = True
            elif cols[0] in ENTITY_TYPES:
                if not header_seen:
                    raise ResourceError(path, lineno, "weights before the header")
                if len(cols) != 10:
                    raise ResourceError(path, lineno, f"expected 10 columns, got {len(cols)}")
                try:
                    rows[cols[0]] = [float(v) for v in cols[1:]]
                except ValueError:
                    raise ResourceError(path, lineno, "non-numeric weight") from None
            else:
                raise ResourceError(path, lineno, f"unexpected row {cols[0]!r}")
        missing = [t for t in ENTITY_TYPES if t not in rows]
        if missing:
            raise ResourceError(path, None, f"missing weights for {', '.join(missing)}")
        try:
            return cls(np.array([rows[t] for t in ENTITY_TYPES]), trained_on)
        except ValueError as exc:
            raise ResourceError(path, None, str(exc)) from None


def classify(features: PhraseFeatures, model: EntityModel) -> tuple[EntityType, np.ndarray]:
    """Most probable type and the full distribution (PER, LOC, ORG, MISC)."""
    probs = model.predict_proba(np.array([features.vector()]))[0]
    return EntityType(int(np.argmax(probs))), probs


# -- training ----------------------------------------------------------------

def objective(W: np.ndarray, X: np.ndarray, y: np.ndarray, l2: float) -> float:
    """L2-penalised multinomial log-likelihood (to be maximised)."""
    scores = X @ W.T
    m = scores.max(axis=1, keepdims=True)
    logz = (m + np.log(np.exp(scores - m).sum(axis=1, keepdims=True))).ravel()
    return float(scores[np.arange(len(y)), y].sum() - logz.sum() - 0.5 * l2 * np.sum(W * W))


def gradient(W: np.ndarray, X: np.ndarray, y: np.ndarray, l2: float) -> np.ndarray:
    P = softmax(X @ W.T)
    Y = np.zeros_like(P)
    Y[np.arange(len(y)), y] = 1.0
    return (Y - P).T @ X - l2 * W


def hessian(W: np.ndarray, X: np.ndarray, l2: float) -> np.ndarray:
    """Hessian of :func:`objective` over the flattened (class-major) weights."""
    P = softmax(X @ W.T)
    k, d = W.shape
    H = np.empty((k, d, k, d))
    for a in range(k):
        for b in range(a, k):
            w = P[:, a] * ((a == b) - P[:, b])
            block = -(X.T * w) @ X
            H[a, :, b, :] = block
            H[b, :, a, :] = block.T
    H = H.reshape(k * d, k * d)
    H[np.diag_indices_from(H)] -= l2
    return H


def train(examples: Iterable[tuple[PhraseFeatures, EntityType]], l2: float = 1.0,
          max_iter: int = 500, tol: float = 1e-6, require_all_classes: bool = True,
          rejected: list | None = None, trained_on: str = "") -> EntityModel:
    """Fit weights by full-batch Newton ascent with backtracking line search.

    Starts from zero weights; deterministic for a given example order.
    Stops once the gradient norm falls to ``tol`` times the number of
    examples. Examples with non-finite features are skipped (and appended
    to ``rejected`` when given).
    """
    rows, labels = [], []
    for i, (feats, label) in enumerate(examples):
        vec = feats.vector()
        if not all(math.isfinite(v) for v in vec):
            log.warning("skipping training example %d: non-finite feature", i)
            if rejected is not None:
                rejected.append(i)
            continue
        rows.append(vec)
        labels.append(int(EntityType(label)))
    present = set(labels)
    if require_all_classes:
        for t in EntityType:
            if t not in present:
                raise ValueError(f"no training examples for class {t.name}")
    elif not present:
        raise ValueError("no training examples")
    X = np.array(rows, dtype=np.float64)
    y = np.array(labels, dtype=np.intp)
    W = np.zeros((N_CLASSES, X.shape[1]))
    f = objective(W, X, y, l2)
    for _ in range(max_iter):
        g = gradient(W, X, y, l2)
        if float(np.linalg.norm(g)) <= tol * max(1.0, len(y)):
            break
        try:
            direction = -np.linalg.solve(hessian(W, X, l2), g.ravel()).reshape(W.shape)
        except np.linalg.LinAlgError:
            direction = g
        slope = float(np.sum(g * direction))
        if not slope > 0:  # not an ascent direction (singular curvature)
            direction, slope = g, float(np.sum(g * g))
        step = 1.0
        while True:
            W_new = W + step * direction
            f_new = objective(W_new, X, y, l2)
            if f_new >= f + 1e-4 * step * slope or step < 1e-12:
                break
            step *= 0.5
        if f_new <= f:
            break
        W, f = W_new, f_new
    return EntityModel(W, trained_on)
