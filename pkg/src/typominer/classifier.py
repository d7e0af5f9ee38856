"""Logistic-regression typo classifier: three features plus a bias.

Training maximizes the unregularized log-likelihood with full-batch gradient
ascent and a backtracking line search, starting from zero weights, so the
result is deterministic. Prediction and corpus labeling are pure.
"""

from __future__ import annotations

import json
import logging
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.special import expit

from .corpus import (
    PROB_TYPO_THRESHOLD,
    CommitRecord,
    Edit,
    FeatureVector,
    TYPO_CATEGORIES,
)
from .metrics import fbeta_from_pr

log = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 10_000
DEFAULT_TOL = 1e-8

_P_FLOOR = sys.float_info.min
_P_CEIL = 1.0 - sys.float_info.epsilon


class TrainingError(ValueError):
    pass


@dataclass(frozen=True)
class ClassifierWeights:
    w_ppl: float
    w_dist: float
    w_num: float
    bias: float
    trained_on: str = ""
    seed: int = 0

    def __post_init__(self):
        for name in ("w_ppl", "w_dist", "w_num", "bias"):
            if not math.isfinite(getattr(self, name)):
                raise TrainingError(f"{name} must be finite")

    def save(self, path) -> None:
        payload = {
            "format": "typominer-weights",
            "version": 1,
            "w_ppl": self.w_ppl,
            "w_dist": self.w_dist,
            "w_num": self.w_num,
            "bias": self.bias,
            "trained_on": self.trained_on,
            "seed": self.seed,
        }
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "ClassifierWeights":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if payload.get("format") != "typominer-weights":
            raise ValueError(f"not a typominer weights file: {path}")
        return cls(
            w_ppl=payload["w_ppl"],
            w_dist=payload["w_dist"],
            w_num=payload["w_num"],
            bias=payload["bias"],
            trained_on=payload.get("trained_on", ""),
            seed=payload.get("seed", 0),
        )


@dataclass(frozen=True)
class LabeledExample:
    features: FeatureVector
    label: bool  # True = typo (mechanical/spell/grammatical), False = semantic


def label_from_category(category: str) -> bool:
    return category in TYPO_CATEGORIES


def _design_matrix(data: Sequence[LabeledExample]) -> tuple[np.ndarray, np.ndarray]:
    x = np.array(
        [[e.features.ppl_ratio, e.features.norm_dist, e.features.numeric_only] for e in data],
        dtype=np.float64,
    )
    y = np.array([1.0 if e.label else 0.0 for e in data], dtype=np.float64)
    return x, y


def _mean_nll(x: np.ndarray, y: np.ndarray, w: np.ndarray, b: float) -> float:
    z = x @ w + b
    # log(1 + e^z) - y*z, computed stably
    return float(np.mean(np.logaddexp(0.0, z) - y * z))


def _gradient(x: np.ndarray, y: np.ndarray, w: np.ndarray, b: float) -> tuple[np.ndarray, float]:
    z = x @ w + b
    resid = expit(z) - y
    n = len(y)
    return x.T @ resid / n, float(np.sum(resid) / n)


def train(
    data: Sequence[LabeledExample],
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    trained_on: str = "",
    seed: int = 0,
) -> ClassifierWeights:
    """Fit weights by maximizing the unregularized log-likelihood.

    Deterministic: zero initialization, full-batch steps, Armijo
    backtracking. Stops when the mean-loss improvement drops below tol or
    max_iter is reached (unbounded growth on separable data is capped there).
    """
    labels = {e.label for e in data}
    if labels != {True, False}:
        raise TrainingError("training data must contain both classes")
    x, y = _design_matrix(data)
    w = np.zeros(3, dtype=np.float64)
    b = 0.0
    loss = _mean_nll(x, y, w, b)
    if not math.isfinite(loss):
        raise TrainingError("non-finite loss at initialization")
    step = 1.0
    converged = False
    for _ in range(max_iter):
        gw, gb = _gradient(x, y, w, b)
        gsq = float(gw @ gw) + gb * gb
        if gsq == 0.0:
            converged = True
            break
        step = min(step * 2.0, 1e8)
        accepted = False
        while step > 1e-18:
            w_new = w - step * gw
            b_new = b - step * gb
            loss_new = _mean_nll(x, y, w_new, b_new)
            if math.isfinite(loss_new) and loss_new <= loss - 1e-4 * step * gsq:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
        improvement = loss - loss_new
        w, b, loss = w_new, b_new, loss_new
        if improvement < tol:
            converged = True
            break
    if not converged:
        # separable data grows weights without bound; the iteration cap is
        # the stopping rule then
        log.info("training stopped at max_iter=%d with loss %.3e", max_iter, loss)
    if not math.isfinite(loss):
        raise TrainingError("training diverged to a non-finite loss")
    return ClassifierWeights(
        w_ppl=float(w[0]), w_dist=float(w[1]), w_num=float(w[2]), bias=b,
        trained_on=trained_on, seed=seed,
    )


def predict(w: ClassifierWeights, f: FeatureVector) -> float:
    """Typo-ness score sigma(w . f + bias), clamped into the open unit
    interval so downstream log-odds stay finite."""
    z = w.w_ppl * f.ppl_ratio + w.w_dist * f.norm_dist + w.w_num * f.numeric_only + w.bias
    if z >= 0:
        p = 1.0 / (1.0 + math.exp(-z))
    else:
        ez = math.exp(z)
        p = ez / (1.0 + ez)
    return min(max(p, _P_FLOOR), _P_CEIL)


def label_edit(edit: Edit, w: ClassifierWeights, threshold: float = PROB_TYPO_THRESHOLD) -> Edit:
    """Fill prob_typo and is_typo for one featurized edit."""
    if edit.features is None:
        raise ValueError("edit has no features")
    p = predict(w, edit.features)
    return replace(edit, prob_typo=p, is_typo=p >= threshold)


def label_corpus(
    records: Iterable[CommitRecord],
    w: ClassifierWeights,
    threshold: float = PROB_TYPO_THRESHOLD,
    skipped: list | None = None,
) -> Iterable[CommitRecord]:
    """Label every featurized edit in a record stream; everything else is
    passed through unchanged. Edits without features are left unlabeled and
    appended to `skipped` when given.

    Thresholds other than 0.5 violate the corpus convention that is_typo
    mirrors prob_typo >= 0.5 and will fail validation on inconsistent edits.
    """
    for rec in records:
        edits = []
        for edit in rec.edits:
            if edit.features is None:
                if skipped is not None:
                    skipped.append(edit)
                edits.append(edit)
            else:
                edits.append(label_edit(edit, w, threshold))
        yield CommitRecord(repo=rec.repo, commit=rec.commit, message=rec.message, edits=edits)


def _stratified_folds(
    n: int, labels: Sequence[bool], k: int, seed: int
) -> list[list[int]]:
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for cls in (True, False):
        idx = [i for i in range(n) if labels[i] == cls]
        order = rng.permutation(len(idx))
        for pos, j in enumerate(order):
            folds[pos % k].append(idx[j])
    return [sorted(f) for f in folds]


def cross_validate(
    data: Sequence[LabeledExample],
    k: int = 10,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> tuple[float, float, float]:
    """Stratified k-fold cross-validation; macro-averaged precision, recall,
    and F1 for the positive (typo) class.

    If some fold leaves the training split single-class, the folds are
    redrawn once with seed+1 before giving up.
    """
    if len(data) < k:
        raise TrainingError(f"need at least k={k} examples, got {len(data)}")
    labels = [e.label for e in data]
    if len(set(labels)) < 2:
        raise TrainingError("cross-validation needs both classes")

    def build(s: int) -> list[list[int]] | None:
        folds = _stratified_folds(len(data), labels, k, s)
        for fold in folds:
            fold_set = set(fold)
            train_labels = {labels[i] for i in range(len(data)) if i not in fold_set}
            if len(train_labels) < 2:
                return None
        return folds

    folds = build(seed)
    if folds is None:
        folds = build(seed + 1)
    if folds is None:
        raise TrainingError("could not build folds with two-class training splits")

    ps, rs, fs = [], [], []
    for fold in folds:
        if not fold:
            continue
        test_set = set(fold)
        train_data = [data[i] for i in range(len(data)) if i not in test_set]
        w = train(train_data, max_iter=max_iter, tol=tol)
        tp = fp = fn = 0
        for i in fold:
            predicted = predict(w, data[i].features) >= PROB_TYPO_THRESHOLD
            actual = data[i].label
            if predicted and actual:
                tp += 1
            elif predicted and not actual:
                fp += 1
            elif not predicted and actual:
                fn += 1
        p = 1.0 if tp + fp == 0 else tp / (tp + fp)
        r = 1.0 if tp + fn == 0 else tp / (tp + fn)
        ps.append(p)
        rs.append(r)
        fs.append(fbeta_from_pr(p, r, 1.0))
    return (
        float(np.mean(ps)),
        float(np.mean(rs)),
        float(np.mean(fs)),
    )
