"""The six benchmark policies.

Each strategy is a stateless object with two callbacks, ``choose_draw`` and
``choose_discard``. They see only a :class:`~rummyelo.game.PlayerView` (own
hand, open card, wildcard rank, opponent discards) plus the seat's private
random stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cards import JOKER, Card, card_points, is_joker
from .game import DRAW_OPEN, DRAW_STOCK, PlayerView
from .melds import discard_key, discard_scores, dist_discard, min_dist, min_score, min_score14
from .rng import SplitMix64

STRATEGY_IDS = ("random", "defeat", "minscore", "mindist", "mindistscore", "mindistopp")

LABELS = {
    "random": "Random",
    "defeat": "Defeat Heuristic",
    "minscore": "Minscore",
    "mindist": "Mindist",
    "mindistscore": "MindistScore",
    "mindistopp": "MindistOpp",
}

DEFAULT_THRESHOLD = 3
OPP_MEMORY = 3  # how many recent opponent discards count as "recent"


class UnknownStrategy(ValueError):
    pass


class Strategy:
    id = ""

    def choose_draw(self, view: PlayerView, rng: SplitMix64) -> str:
        raise NotImplementedError

    def choose_discard(self, view: PlayerView, rng: SplitMix64) -> Card:
        raise NotImplementedError

    @property
    def label(self) -> str:
        return LABELS[self.id]

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def _can_take(view: PlayerView) -> bool:
    return view.open_card is not None


class RandomAgent(Strategy):
    id = "random"

    def choose_draw(self, view: PlayerView, rng: SplitMix64) -> str:
        options = [o for o, ok in ((DRAW_STOCK, view.stock_available), (DRAW_OPEN, _can_take(view))) if ok]
        return rng.choice(options)

    def choose_discard(self, view: PlayerView, rng: SplitMix64) -> Card:
        return rng.choice(view.hand)


def _natural_melds_with(card: Card, others: list[Card], wcj: Optional[int]) -> bool:
    """Whether ``card`` and two of ``others`` form a natural three-card meld."""
    if is_joker(card, wcj):
        return False
    nat = {c for c in others if not is_joker(c, wcj)}
    rank, suit = card % 13, card // 13
    if sum(1 for c in nat if c % 13 == rank and c // 13 != suit) >= 2:
        return True
    # runs of three through this card; ace counts low or high
    pos = rank + 1
    held = {c % 13 + 1 for c in nat if c // 13 == suit}
    if 1 in held:
        held.add(14)
    positions = {pos, 14} if pos == 1 else {pos}
    for p in positions:
        for lo in (p - 2, p - 1, p):
            run = [q for q in range(lo, lo + 3) if q != p]
            if lo >= 1 and lo + 2 <= 14 and all(q in held for q in run):
                return True
    return False


class DefeatSeekingAgent(Strategy):
    """Picks up cards that make melds, then throws away meld cards."""

    id = "defeat"

    def choose_draw(self, view: PlayerView, rng: SplitMix64) -> str:
        if _can_take(view) and _natural_melds_with(view.open_card, list(view.hand), view.wcj):
            return DRAW_OPEN
        return DRAW_STOCK if view.stock_available else DRAW_OPEN

    def choose_discard(self, view: PlayerView, rng: SplitMix64) -> Card:
        hand = list(view.hand)
        wcj = view.wcj
        melded = [c for i, c in enumerate(hand) if _natural_melds_with(c, hand[:i] + hand[i + 1 :], wcj)]
        pool = melded or hand
        return min(pool, key=lambda c: (card_points(c, wcj), c))


@dataclass(frozen=True)
class MinScoreAgent(Strategy):
    threshold: int = DEFAULT_THRESHOLD
    id = "minscore"

    def choose_draw(self, view: PlayerView, rng: SplitMix64) -> str:
        if not _can_take(view):
            return DRAW_STOCK
        if not view.stock_available:
            return DRAW_OPEN
        before = min_score(view.hand, view.wcj)
        _, after = min_score14(view.hand + (view.open_card,), view.wcj)
        if after == 0 or after <= before - self.threshold:
            return DRAW_OPEN
        return DRAW_STOCK

    def choose_discard(self, view: PlayerView, rng: SplitMix64) -> Card:
        table = discard_scores(view.hand, view.wcj)
        return min(table, key=lambda c: (table[c],) + discard_key(c, view.wcj))


class MinDistAgent(Strategy):
    """Takes the open card only when it lowers MinDist.

    Discards keep the lowest MinDist; ties go to the lower resulting MinScore,
    then the higher-point card, then the lower card code.
    """

    id = "mindist"

    def _order(self, view: PlayerView, hand: tuple[Card, ...]):
        wcj = view.wcj
        scores = discard_scores(hand, wcj)
        return lambda c: (scores[c],) + discard_key(c, wcj)

    def _improves(self, view: PlayerView) -> bool:
        d0 = min_dist(view.hand, view.wcj)
        if d0 == 0:
            return False
        hand = view.hand + (view.open_card,)
        return dist_discard(hand, view.wcj, lambda c: discard_key(c, view.wcj), d0 - 1, d0 - 1) is not None

    def choose_draw(self, view: PlayerView, rng: SplitMix64) -> str:
        if not _can_take(view):
            return DRAW_STOCK
        if not view.stock_available or self._improves(view):
            return DRAW_OPEN
        return DRAW_STOCK

    def choose_discard(self, view: PlayerView, rng: SplitMix64) -> Card:
        hand = view.hand
        before = _pre_draw_dist(hand, view.wcj)
        card, _ = dist_discard(hand, view.wcj, self._order(view, hand), before - 1)
        return card


def _pre_draw_dist(hand14: tuple[Card, ...], wcj: Optional[int]) -> int:
    # any 13 of the 14 cards are within one substitution of each other, so
    # the hand before the draw gives a valid floor of (its distance - 1)
    return min_dist(hand14[:-1], wcj)


class HybridAgent(MinDistAgent):
    """MinDist, but a draw that keeps MinDist level is taken if it lowers MinScore."""

    id = "mindistscore"

    def choose_draw(self, view: PlayerView, rng: SplitMix64) -> str:
        if not _can_take(view):
            return DRAW_STOCK
        if not view.stock_available:
            return DRAW_OPEN
        wcj = view.wcj
        d0 = min_dist(view.hand, wcj)
        hand = view.hand + (view.open_card,)
        card, d = dist_discard(hand, wcj, self._order(view, hand), max(0, d0 - 1))
        if d < d0:
            return DRAW_OPEN
        if d0 == 0:
            return DRAW_STOCK
        # same distance: the best-scoring keep among equally distant ones
        return DRAW_OPEN if discard_scores(hand, wcj)[card] < min_score(view.hand, wcj) else DRAW_STOCK


def _similar(card: Card, recent: tuple[Card, ...], wcj: Optional[int]) -> bool:
    if card == JOKER:
        return False
    for o in recent:
        if o == JOKER:
            continue
        if card % 13 == o % 13:
            return True
        if card // 13 == o // 13 and abs(card % 13 - o % 13) <= 1:
            return True
    return False


class OpponentAwareAgent(MinDistAgent):
    """MinDist, but stuck hands throw cards resembling the opponent's discards."""

    id = "mindistopp"

    def choose_discard(self, view: PlayerView, rng: SplitMix64) -> Card:
        hand = view.hand
        wcj = view.wcj
        before = _pre_draw_dist(hand, wcj)
        plain = self._order(view, hand)
        found = dist_discard(hand, wcj, plain, before - 1, before - 1) if before > 0 else None
        if found is not None:
            return found[0]
        recent = view.opp_discards[-OPP_MEMORY:]
        card, _ = dist_discard(hand, wcj, lambda c: (not _similar(c, recent, wcj),) + plain(c), before)
        return card


_CLASSES = {
    cls.id: cls for cls in (RandomAgent, DefeatSeekingAgent, MinScoreAgent, MinDistAgent, HybridAgent, OpponentAwareAgent)
}


def make_strategy(strategy_id: str, threshold: int = DEFAULT_THRESHOLD) -> Strategy:
    try:
        cls = _CLASSES[strategy_id]
    except KeyError:
        raise UnknownStrategy(f"unknown strategy {strategy_id!r}; expected one of {', '.join(STRATEGY_IDS)}") from None
    if cls is MinScoreAgent:
        return MinScoreAgent(threshold=threshold)
    return cls()
