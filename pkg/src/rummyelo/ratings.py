"""Rating systems: classical Elo and the score-based variant with benchmarks.

The score-based update compares each player's final deadwood score ``A_i``
against a benchmark ``B_i``. The two benchmarks split the game's total score
``A = A1 + A2`` by a logistic in the rating gap and the initial-hand gap::

    B1 = A / (1 + 10 ** -(alpha * D_R + beta * D_H))      B2 = A - B1

    delta_i = K_i * (A_i - B_i)   if (A_i - B_i) * (W_i - 0.5) <= 0 else 0

K is negative (a low score is good), so beating the benchmark raises the
rating. The indicator stops a winner from losing points, and a loser from
gaining them. With a shared K the two indicators always agree, so rating
points are conserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .melds import SCORE_CAP

INITIAL_RATING = 1000.0
DEFAULT_K = -0.625
DEFAULT_ALPHA = -0.0032
DEFAULT_BETA = -0.012690
DEFAULT_SCHEDULE = (-1.0, -0.625, -0.4, 30, 100)
TRADITIONAL_K = 32.0


class RatingConfigError(ValueError):
    pass


@dataclass
class RatingState:
    rating: float = INITIAL_RATING
    games_played: int = 0


@dataclass(frozen=True)
class RatingParams:
    """Constant K unless ``schedule`` = (k1, k2, k3, p, q) is given."""

    k: float = DEFAULT_K
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    schedule: Optional[tuple[float, float, float, int, int]] = None
    score_cap: int = SCORE_CAP

    def validate(self) -> None:
        if self.schedule is not None:
            k1, k2, k3, p, q = self.schedule
            if not abs(k1) > abs(k2) > abs(k3):
                raise RatingConfigError("K schedule needs |k1| > |k2| > |k3|")
            if not 0 <= p < q:
                raise RatingConfigError("K schedule needs 0 <= p < q")
            if max(k1, k2, k3) >= 0:
                raise RatingConfigError("K values must be negative")
        elif self.k >= 0:
            raise RatingConfigError("K must be negative")
        if self.alpha >= 0:
            raise RatingConfigError("alpha must be negative")


@dataclass(frozen=True)
class UpdateResult:
    delta1: float
    delta2: float
    b1: float
    b2: float
    applied: bool
    d_r: float = 0.0
    d_h: float = 0.0


def expected_score_elo(ri: float, rj: float) -> float:
    return 1.0 / (1.0 + 10.0 ** ((rj - ri) / 400.0))


def elo_update(ri: float, rj: float, si: float, k: float = TRADITIONAL_K) -> tuple[float, float]:
    ei = expected_score_elo(ri, rj)
    delta = k * (si - ei)
    return ri + delta, rj - delta


def benchmarks(a: float, d_r: float, d_h: float, params: RatingParams) -> tuple[float, float]:
    if a < 0:
        raise ValueError("total score must be non-negative")
    x = params.alpha * d_r + params.beta * d_h
    # logistic in base 10, written to avoid overflow for large |x|
    if x >= 0:
        share = 1.0 / (1.0 + 10.0 ** (-x))
    else:
        z = 10.0**x
        share = z / (1.0 + z)
    b1 = a * share
    b1 = min(max(b1, 0.0), a)
    return b1, a - b1


def k_for(n: int, params: RatingParams) -> float:
    if params.schedule is None:
        return params.k
    k1, k2, k3, p, q = params.schedule
    if not abs(k1) > abs(k2) > abs(k3):
        raise RatingConfigError("K schedule needs |k1| > |k2| > |k3|")
    if n <= p:
        return k1
    if n <= q:
        return k2
    return k3


def custom_update(s1: RatingState, s2: RatingState, rec, params: RatingParams) -> Optional[UpdateResult]:
    """Apply one game's update in place; returns None for drawn games (skipped)."""
    if not rec.decided:
        return None
    a = rec.a1 + rec.a2
    d_r = s1.rating - s2.rating
    d_h = rec.h1 - rec.h2
    b1, b2 = benchmarks(a, d_r, d_h, params)
    dev1 = rec.a1 - b1
    dev2 = rec.a2 - b2
    fire1 = dev1 * (rec.w1 - 0.5) <= 0
    fire2 = dev2 * (rec.w2 - 0.5) <= 0
    delta1 = k_for(s1.games_played, params) * dev1 if fire1 else 0.0
    delta2 = k_for(s2.games_played, params) * dev2 if fire2 else 0.0
    s1.rating += delta1
    s2.rating += delta2
    s1.games_played += 1
    s2.games_played += 1
    return UpdateResult(delta1, delta2, b1, b2, fire1 and fire2, d_r, d_h)


def traditional_update(s1: RatingState, s2: RatingState, rec, k: float = TRADITIONAL_K) -> tuple[float, float]:
    """Classical Elo on the win/draw/loss result; returns the two deltas."""
    r1, r2 = elo_update(s1.rating, s2.rating, rec.w1, k)
    d1, d2 = r1 - s1.rating, r2 - s2.rating
    s1.rating, s2.rating = r1, r2
    s1.games_played += 1
    s2.games_played += 1
    return d1, d2
