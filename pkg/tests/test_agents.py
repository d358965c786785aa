from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rummyelo.agents import (
    LABELS,
    STRATEGY_IDS,
    DefeatSeekingAgent,
    HybridAgent,
    MinDistAgent,
    MinScoreAgent,
    OpponentAwareAgent,
    RandomAgent,
    UnknownStrategy,
    make_strategy,
)
from rummyelo.cards import JOKER, new_deck, parse_hand
from rummyelo.game import DRAW_OPEN, DRAW_STOCK, PlayerView
from rummyelo.melds import discard_dists, discard_scores, min_dist
from rummyelo.rng import SplitMix64

TEXTBOOK = "2H 3H 4H 5S 6S 7S 9C 9D 9S 10D JD QD KD"
# two pure runs, a set, a half-built run and three loose cards
STUCK = "2H 3H 4H 5S 6S 7S 9C 9D 9S 10D JD 4C KH"


def view(hand, open_card=None, wcj=None, opp=(), stock=True) -> PlayerView:
    h = tuple(parse_hand(hand)) if isinstance(hand, str) else tuple(hand)
    oc = parse_hand(open_card)[0] if isinstance(open_card, str) else open_card
    o = tuple(parse_hand(opp)) if isinstance(opp, str) else tuple(opp)
    return PlayerView(1, h, oc, wcj, o, stock)


def random_position(seed: int):
    rng = random.Random(seed)
    deck = new_deck()
    rng.shuffle(deck)
    wcj = rng.choice([None] + list(range(1, 14)))
    hand = deck[:14]
    if wcj is None and hand.count(JOKER) > 1:
        hand.remove(JOKER)
        hand.append(next(c for c in deck[14:] if c != JOKER))
    return hand, wcj


positions = st.integers(0, 2**32).map(random_position)
ALL = [make_strategy(s) for s in STRATEGY_IDS]


def test_factory_covers_every_id():
    for s in STRATEGY_IDS:
        agent = make_strategy(s)
        assert agent.id == s and agent.label == LABELS[s]
    assert make_strategy("minscore", 7).threshold == 7
    with pytest.raises(UnknownStrategy):
        make_strategy("greedy")


class TestCommonContracts:
    @settings(max_examples=15, deadline=None)
    @given(positions, st.integers(0, 1000))
    def test_discard_is_held_and_deterministic(self, pos, seed):
        hand, wcj = pos
        v = view(hand, wcj=wcj, opp=hand[:2])
        for agent in ALL:
            a = agent.choose_discard(v, SplitMix64(seed))
            assert a in hand
            assert a == agent.choose_discard(v, SplitMix64(seed))

    def test_no_stock_means_open_card(self):
        v = view(STUCK, "8S", stock=False)
        for agent in ALL:
            assert agent.choose_draw(v, SplitMix64(0)) == DRAW_OPEN

    def test_random_sequence_is_reproducible(self):
        v = view(TEXTBOOK + " 8H", open_card="8C")
        runs = []
        for _ in range(2):
            rng = SplitMix64(99)
            runs.append([(RandomAgent().choose_draw(v, rng), RandomAgent().choose_discard(v, rng)) for _ in range(20)])
        assert runs[0] == runs[1]
        assert len({d for d, _ in runs[0]}) == 2


class TestMinScoreAgent:
    def test_takes_card_that_completes_the_hand(self):
        hand = "2H 3H 4H 5S 6S 7S 9C 9D 9S 10D JD QD 5C"
        assert MinScoreAgent().choose_draw(view(hand, "KD"), SplitMix64(0)) == DRAW_OPEN

    def test_threshold(self):
        # 2C in for KH drops the score by 8 points
        assert MinScoreAgent(3).choose_draw(view(STUCK, "2C"), SplitMix64(0)) == DRAW_OPEN
        assert MinScoreAgent(9).choose_draw(view(STUCK, "2C"), SplitMix64(0)) == DRAW_STOCK

    @settings(max_examples=15, deadline=None)
    @given(positions)
    def test_discard_is_optimal(self, pos):
        hand, wcj = pos
        card = MinScoreAgent().choose_discard(view(hand, wcj=wcj), SplitMix64(0))
        rest = list(hand)
        rest.remove(card)
        best = min(oracles.min_score(hand[:i] + hand[i + 1 :], wcj) for i in range(14))
        assert oracles.min_score(rest, wcj) == best


class TestMinDistAgents:
    def test_unchanged_distance_draws_stock(self):
        # 2C only lowers the score; MinDist stays at 2
        v = view(STUCK, "2C")
        assert min_dist(v.hand, None) == 2
        assert MinDistAgent().choose_draw(v, SplitMix64(0)) == DRAW_STOCK
        assert OpponentAwareAgent().choose_draw(v, SplitMix64(0)) == DRAW_STOCK

    def test_hybrid_takes_level_draw_that_lowers_score(self):
        assert HybridAgent().choose_draw(view(STUCK, "2C"), SplitMix64(0)) == DRAW_OPEN
        # KS keeps the distance and the score level
        assert HybridAgent().choose_draw(view(STUCK, "KS"), SplitMix64(0)) == DRAW_STOCK

    def test_improving_card_is_taken(self):
        for agent in (MinDistAgent(), HybridAgent(), OpponentAwareAgent()):
            assert agent.choose_draw(view(STUCK, "QD"), SplitMix64(0)) == DRAW_OPEN

    def test_hybrid_breaks_distance_ties_by_score(self):
        hand = parse_hand(STUCK + " 2C")
        dists, scores = discard_dists(hand, None), discard_scores(hand, None)
        card = HybridAgent().choose_discard(view(hand), SplitMix64(0))
        tied = [c for c in hand if dists[c] == dists[card]]
        assert dists[card] == min(dists.values()) and len(tied) > 1
        assert scores[card] == min(scores[c] for c in tied) < max(scores[c] for c in tied)
        assert card == parse_hand("KH")[0]

    def test_opponent_aware_throws_a_similar_card_when_stuck(self):
        hand = STUCK + " 2C"
        plain = MinDistAgent().choose_discard(view(hand, opp="5C"), SplitMix64(0))
        aware = OpponentAwareAgent().choose_discard(view(hand, opp="5C"), SplitMix64(0))
        assert plain == parse_hand("KH")[0]
        assert aware == parse_hand("4C")[0]
        # same rank in another suit also counts as similar
        assert OpponentAwareAgent().choose_discard(view(hand, opp="5D"), SplitMix64(0)) == parse_hand("5S")[0]

    def test_opponent_aware_ignores_history_when_it_can_improve(self):
        hand = "2H 3H 4H 5S 6S 7S 9C 9D 9S 10D JD 4C KH QD"
        a = OpponentAwareAgent().choose_discard(view(hand, opp="5C"), SplitMix64(0))
        assert a == MinDistAgent().choose_discard(view(hand), SplitMix64(0))

    @settings(max_examples=12, deadline=None)
    @given(positions)
    def test_discards_minimise_distance(self, pos):
        hand, wcj = pos
        direct = {c: min_dist(hand[:i] + hand[i + 1 :], wcj) for i, c in enumerate(hand)}
        scores = discard_scores(hand, wcj)
        best = min(direct.values())
        for agent in (MinDistAgent(), HybridAgent()):
            c = agent.choose_discard(view(hand, wcj=wcj), SplitMix64(0))
            assert direct[c] == best
            assert scores[c] == min(scores[x] for x in hand if direct[x] == best)
        c = OpponentAwareAgent().choose_discard(view(hand, wcj=wcj, opp=hand[:1]), SplitMix64(0))
        assert direct[c] <= min_dist(hand[:13], wcj)

    @settings(max_examples=12, deadline=None)
    @given(positions)
    def test_draw_rule_matches_enumeration(self, pos):
        hand, wcj = pos
        base, open_card = hand[:13], hand[13]
        before = min_dist(base, wcj)
        after = min(min_dist(hand[:i] + hand[i + 1 :], wcj) for i in range(14))
        expected = DRAW_OPEN if after < before else DRAW_STOCK
        assert MinDistAgent().choose_draw(view(base, open_card, wcj), SplitMix64(0)) == expected


class TestDefeatSeeking:
    def test_discards_lowest_card_of_its_only_meld(self):
        hand = parse_hand("5H 6H 7H 2C 9D KS JC 4S QD AC 8S 10C 3D KD")
        card = DefeatSeekingAgent().choose_discard(view(hand), SplitMix64(0))
        assert card == parse_hand("5H")[0]
        rest = [c for c in hand if c != card]
        alternatives = [oracles.min_score(hand[:i] + hand[i + 1 :], None) for i in range(14)]
        assert oracles.min_score(rest, None) >= min(alternatives)

    def test_falls_back_to_lowest_point_card(self):
        hand = parse_hand("AC 3C 5C 7D 9D JD KH 2H 4H 6S 8S 10S QS KC")
        assert DefeatSeekingAgent().choose_discard(view(hand), SplitMix64(0)) == parse_hand("2H")[0]

    def test_picks_up_meld_makers_only(self):
        agent = DefeatSeekingAgent()
        assert agent.choose_draw(view(STUCK, "QD"), SplitMix64(0)) == DRAW_OPEN
        assert agent.choose_draw(view(STUCK, "9H"), SplitMix64(0)) == DRAW_OPEN
        assert agent.choose_draw(view(STUCK, "8C"), SplitMix64(0)) == DRAW_STOCK
