"""Seeded two-player Indian Rummy simulator with score-based Elo ratings."""

from .agents import STRATEGY_IDS, make_strategy
from .cards import JOKER, Deal, card_str, deal, parse_card, parse_hand
from .game import GameRecord, ProtocolViolation, legal_actions, play_game
from .harness import ScheduleConfig, build_schedule, moving_average, run, summarize
from .melds import evaluate, is_valid_declaration, min_dist, min_dist14, min_score, min_score14
from .ratings import RatingParams, RatingState, benchmarks, custom_update, elo_update, expected_score_elo, k_for
from .tuning import TuneConfig, f1, fit_logistic, rerate, tune

__all__ = [
    "JOKER", "STRATEGY_IDS", "Deal", "GameRecord", "ProtocolViolation", "RatingParams", "RatingState",
    "ScheduleConfig", "TuneConfig", "benchmarks", "build_schedule", "card_str", "custom_update", "deal",
    "elo_update", "evaluate", "expected_score_elo", "f1", "fit_logistic", "is_valid_declaration", "k_for",
    "legal_actions", "make_strategy", "min_dist", "min_dist14", "min_score", "min_score14", "moving_average",
    "parse_card", "parse_hand", "play_game", "rerate", "run", "summarize", "tune",
]
