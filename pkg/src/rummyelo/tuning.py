"""Sweep beta: rerate, fit a one-feature logistic winner model, score F1."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .game import GameRecord
from .ratings import DEFAULT_ALPHA, DEFAULT_K, RatingParams, RatingState, custom_update
from .rng import STREAM_SPLIT, SplitMix64, derive_seed

MAX_ITER = 10_000
GRAD_TOL = 1e-8
DEFAULT_SPLIT = 0.8


class DegenerateFit(ValueError):
    pass


def default_grid(lo: float = -0.03, hi: float = 0.03, points: int = 61) -> list[float]:
    step = (hi - lo) / (points - 1)
    return [round(lo + i * step, 12) for i in range(points)]


@dataclass(frozen=True)
class TuneConfig:
    records: Sequence[GameRecord]
    beta_grid: Sequence[float] = field(default_factory=default_grid)
    alpha: float = DEFAULT_ALPHA
    k: float = DEFAULT_K
    split: float = DEFAULT_SPLIT
    split_seed: int = 0

    def validate(self) -> None:
        if not self.beta_grid:
            raise ValueError("beta grid is empty")
        if any(b >= a for a, b in zip(self.beta_grid[1:], self.beta_grid)):
            raise ValueError("beta grid must be strictly increasing")
        if not 0 < self.split < 1:
            raise ValueError("split must be in (0, 1)")


@dataclass(frozen=True)
class TuneResult:
    betas: list[float]
    f1s: list[Optional[float]]  # None where the fit failed
    best_beta: float
    best_f1: float


def rerate(records: Sequence[GameRecord], alpha: float, beta: float, k: float = DEFAULT_K) -> list[tuple[float, int]]:
    """(pre-game rating gap, seat-1 won) for each decided game, replayed in order."""
    params = RatingParams(k=k, alpha=alpha, beta=beta)
    states: dict[str, RatingState] = {}
    out = []
    for rec in records:
        s1 = states.setdefault(rec.seat1, RatingState())
        s2 = states.setdefault(rec.seat2, RatingState())
        d_r = s1.rating - s2.rating
        if custom_update(s1, s2, rec, params) is not None:
            out.append((d_r, 1 if rec.w1 == 1 else 0))
    return out


def _loss_grad(w: float, b: float, x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    z = w * x + b
    # mean log-loss, stable for large |z|
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    p = 0.5 * (1.0 + np.tanh(0.5 * z))
    r = p - y
    return loss, float(np.mean(r * x)), float(np.mean(r))


@dataclass(frozen=True)
class LogisticFit:
    w: float
    b: float
    iterations: int
    grad_norm: float
    losses: tuple[float, ...] = ()

    def prob(self, x: float) -> float:
        z = self.w * x + self.b
        return 0.5 * (1.0 + math.tanh(0.5 * z))

    def predict(self, xs: Sequence[float]) -> list[int]:
        return [1 if self.w * x + self.b >= 0 else 0 for x in xs]


def fit_logistic(xs: Sequence[float], ys: Sequence[int], keep_losses: bool = False) -> LogisticFit:
    """Maximum-likelihood fit of P(y=1) = sigmoid(w x + b).

    Batch gradient descent on the standardised feature; the step is halved
    whenever it would not lower the loss. Stops at a gradient norm of 1e-8
    (on the standardised problem; ``grad_norm`` is reported on the raw one),
    after 10,000 iterations, or when the step underflows.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if len(x) == 0 or len(x) != len(y):
        raise DegenerateFit("need equally many features and labels, at least one")
    if y.min() == y.max():
        raise DegenerateFit("training labels contain a single class")
    mu = float(x.mean())
    sd = float(x.std()) or 1.0
    xs_ = (x - mu) / sd
    w = b = 0.0
    step = 4.0
    loss, gw, gb = _loss_grad(w, b, xs_, y)
    losses = [loss]
    it = 0
    while it < MAX_ITER and math.hypot(gw, gb) >= GRAD_TOL and step > 1e-12:
        nw, nb = w - step * gw, b - step * gb
        nloss, ngw, ngb = _loss_grad(nw, nb, xs_, y)
        if nloss < loss or (nloss == loss and math.hypot(ngw, ngb) < math.hypot(gw, gb)):
            w, b, loss, gw, gb = nw, nb, nloss, ngw, ngb
            if keep_losses:
                losses.append(loss)
            it += 1
        else:
            step /= 2
    # chain rule back to the original feature: x = sd * x' + mu
    gw_raw = gw * sd + gb * mu
    gb_raw = gb
    return LogisticFit(w / sd, b - w * mu / sd, it, math.hypot(gw_raw, gb_raw), tuple(losses))


def f1(predictions: Sequence[int], labels: Sequence[int]) -> float:
    """F1 for the positive class; 0 when there are no predicted and no actual positives."""
    if len(predictions) != len(labels) or not labels:
        raise ValueError("predictions and labels must be non-empty and equally long")
    tp = sum(1 for p, y in zip(predictions, labels) if p == 1 and y == 1)
    fp = sum(1 for p, y in zip(predictions, labels) if p == 1 and y == 0)
    fn = sum(1 for p, y in zip(predictions, labels) if p == 0 and y == 1)
    denom = 2 * tp + fp + fn
    return 0.0 if denom == 0 else 2 * tp / denom


def split_indices(n: int, train_fraction: float, seed: int) -> tuple[list[int], list[int]]:
    idx = list(range(n))
    SplitMix64(derive_seed(seed, STREAM_SPLIT)).shuffle(idx)
    cut = int(round(n * train_fraction))
    return sorted(idx[:cut]), sorted(idx[cut:])


def evaluate_beta(cfg: TuneConfig, beta: float) -> float:
    data = rerate(cfg.records, cfg.alpha, beta, cfg.k)
    train, test = split_indices(len(data), cfg.split, cfg.split_seed)
    if not test:
        raise DegenerateFit("empty test split")
    model = fit_logistic([data[i][0] for i in train], [data[i][1] for i in train])
    preds = model.predict([data[i][0] for i in test])
    return f1(preds, [data[i][1] for i in test])


def tune(cfg: TuneConfig) -> TuneResult:
    cfg.validate()
    betas = list(cfg.beta_grid)
    scores: list[Optional[float]] = []
    for beta in betas:
        try:
            scores.append(evaluate_beta(cfg, beta))
        except DegenerateFit:
            scores.append(None)
    valid = [(s, i) for i, s in enumerate(scores) if s is not None]
    if not valid:
        raise DegenerateFit("no beta produced a usable fit")
    best = max(s for s, _ in valid)
    first = next(i for s, i in valid if s == best)
    return TuneResult(betas, scores, betas[first], best)
