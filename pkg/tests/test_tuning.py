from __future__ import annotations

import math
import random
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rummyelo.game import DECLARATION, TURN_CAP, GameRecord
from rummyelo.harness import ScheduleConfig, build_schedule, simulate
from rummyelo.tuning import (
    DegenerateFit,
    TuneConfig,
    default_grid,
    evaluate_beta,
    f1,
    fit_logistic,
    rerate,
    split_indices,
    tune,
)


@pytest.fixture(scope="module")
def records():
    cfg = ScheduleConfig(strategies=("random", "minscore", "defeat", "mindist"), games_per_directed_pair=6, master_seed=21)
    return simulate(build_schedule(cfg))


def synthetic(n: int, seed: int) -> list[GameRecord]:
    """Random decided and drawn games among three ids."""
    rng = random.Random(seed)
    ids = ["a", "b", "c"]
    out = []
    for _ in range(n):
        s1, s2 = rng.sample(ids, 2)
        if rng.random() < 0.1:
            out.append(GameRecord(s1, s2, rng.randint(0, 80), rng.randint(0, 80), rng.randint(0, 80), rng.randint(0, 80), 0.5, 0.5, 200, TURN_CAP, 0))
            continue
        w1 = rng.random() < 0.5
        loser = rng.randint(1, 80)
        a1, a2 = (0, loser) if w1 else (loser, 0)
        out.append(GameRecord(s1, s2, rng.randint(0, 80), rng.randint(0, 80), a1, a2, float(w1), float(not w1), 30, DECLARATION, 0))
    return out


def mean_loss(w: float, b: float, xs, ys) -> float:
    return sum(math.log1p(math.exp(-(w * x + b))) if y else math.log1p(math.exp(w * x + b)) for x, y in zip(xs, ys)) / len(xs)


class TestF1:
    def test_perfect(self):
        assert f1([1, 0, 1, 0], [1, 0, 1, 0]) == 1.0

    def test_hand_computed(self):
        # TP=2, FP=1, FN=1
        assert f1([1, 1, 1, 0, 0], [1, 1, 0, 1, 0]) == pytest.approx(2 / 3)

    def test_all_negative_predictions(self):
        assert f1([0, 0, 0], [1, 0, 1]) == 0.0
        assert f1([0, 0], [0, 0]) == 0.0

    @given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=40), st.randoms())
    def test_range_and_order_invariance(self, pairs, rnd):
        p, y = zip(*pairs)
        score = f1(p, y)
        assert 0.0 <= score <= 1.0
        shuffled = list(pairs)
        rnd.shuffle(shuffled)
        p2, y2 = zip(*shuffled)
        assert f1(p2, y2) == score

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            f1([1], [1, 0])


class TestLogistic:
    def test_symmetric_data_has_zero_intercept(self):
        rng = np.random.default_rng(4)
        x = rng.normal(size=100)
        y = (x + rng.normal(scale=1.5, size=100) > 0).astype(int)
        fit = fit_logistic(np.concatenate([x, -x]), np.concatenate([y, 1 - y]))
        assert fit.b == pytest.approx(0, abs=1e-6) and fit.w > 0

    def test_gradient_vanishes_at_optimum(self):
        rng = random.Random(8)
        xs = [rng.uniform(-300, 300) for _ in range(300)]
        ys = [1 if rng.random() < 1 / (1 + math.exp(-x / 100)) else 0 for x in xs]
        fit = fit_logistic(xs, ys)
        # nudging either coefficient only raises the loss
        base = mean_loss(fit.w, fit.b, xs, ys)
        for dw_, db_ in ((1e-4, 0), (-1e-4, 0), (0, 1e-2), (0, -1e-2)):
            assert mean_loss(fit.w + dw_ / 100, fit.b + db_, xs, ys) >= base
        resid = [1 / (1 + math.exp(-(fit.w * x + fit.b))) - y for x, y in zip(xs, ys)]
        dw = sum(r * x for r, x in zip(resid, xs)) / len(xs)
        db = sum(resid) / len(xs)
        assert math.hypot(dw, db) == pytest.approx(fit.grad_norm, rel=1e-3, abs=1e-12)
        assert fit.grad_norm < 1e-8 * 300

    def test_losses_never_increase(self):
        rng = random.Random(2)
        xs = [rng.gauss(0, 50) for _ in range(200)]
        ys = [int(x + rng.gauss(0, 40) > 0) for x in xs]
        losses = fit_logistic(xs, ys, keep_losses=True).losses
        assert all(b <= a for a, b in zip(losses, losses[1:]))

    def test_separable_data(self):
        xs = [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]
        ys = [0, 0, 0, 1, 1, 1]
        fit = fit_logistic(xs, ys)
        assert all(fit.prob(x) >= 0.5 for x, y in zip(xs, ys) if y == 1)
        assert fit.predict(xs) == ys

    def test_single_class_is_degenerate(self):
        with pytest.raises(DegenerateFit):
            fit_logistic([1.0, 2.0], [1, 1])
        with pytest.raises(DegenerateFit):
            fit_logistic([], [])


class TestRerate:
    def test_first_gap_is_zero_and_draws_dropped(self):
        recs = synthetic(200, 1)
        data = rerate(recs, -0.0032, -0.01)
        assert data[0][0] == 0.0
        assert len(data) == sum(r.decided for r in recs)
        assert rerate(recs, -0.0032, -0.01) == data

    def test_beta_zero_ignores_hand_gap(self):
        recs = synthetic(200, 2)
        flat = [replace(r, h1=0, h2=0) for r in recs]
        assert rerate(recs, -0.0032, 0.0) == rerate(flat, -0.0032, 0.123)

    def test_split_is_deterministic_partition(self):
        train, test = split_indices(50, 0.8, 3)
        assert (train, test) == split_indices(50, 0.8, 3)
        assert len(train) == 40 and sorted(train + test) == list(range(50))


class TestTune:
    def test_single_point_grid(self, records):
        res = tune(TuneConfig(records, beta_grid=[-0.0127]))
        assert res.best_beta == -0.0127 and res.f1s == [res.best_f1]

    def test_curve_is_self_consistent(self, records):
        cfg = TuneConfig(records, beta_grid=default_grid(-0.03, 0.03, 7))
        res = tune(cfg)
        valid = [f for f in res.f1s if f is not None]
        assert res.best_f1 == max(valid)
        assert res.f1s.index(res.best_f1) == res.betas.index(res.best_beta)
        assert evaluate_beta(cfg, res.best_beta) == res.best_f1
        assert tune(cfg) == res

    def test_default_grid(self):
        grid = default_grid()
        assert len(grid) == 61 and grid[0] == -0.03 and grid[-1] == 0.03 and grid[30] == 0.0

    def test_bad_grid(self, records):
        with pytest.raises(ValueError):
            tune(TuneConfig(records, beta_grid=[0.01, 0.0]))
        with pytest.raises(ValueError):
            tune(TuneConfig(records, beta_grid=[]))

    def test_failed_points_are_recorded_not_fatal(self):
        # every seat-1 player wins, so every fit is single-class
        recs = [GameRecord("a", "b", 10, 10, 0, 20, 1.0, 0.0, 5, DECLARATION, 0)] * 20
        with pytest.raises(DegenerateFit):
            tune(TuneConfig(recs, beta_grid=[0.0, 0.01]))
