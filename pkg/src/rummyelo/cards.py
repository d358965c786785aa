"""Cards, the 54-card pack, point values and the seeded deal.

Cards are plain ints so hands can be hashed and sorted cheaply:

* ``suit * 13 + (rank - 1)`` for standard cards, suits ordered C, D, H, S and
  ranks 1 (ace) .. 13 (king);
* ``JOKER`` (52) for a printed joker. The pack holds two of them, which are
  interchangeable.

Text codes are rank + suit letter (``"10H"``, ``"QS"``, ``"AC"``) and ``"JK"``
for a printed joker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .rng import STREAM_DEAL, SplitMix64, derive_seed

SUITS = "CDHS"
RANK_NAMES = ("A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K")
JOKER = 52
HAND_SIZE = 13
DECK_SIZE = 54

Card = int


class CardParseError(ValueError):
    def __init__(self, token: str) -> None:
        super().__init__(f"malformed card code: {token!r}")
        self.token = token


def make_card(rank: int, suit: int) -> Card:
    if not 1 <= rank <= 13 or not 0 <= suit <= 3:
        raise ValueError(f"bad rank/suit: {rank}/{suit}")
    return suit * 13 + rank - 1


def rank_of(card: Card) -> Optional[int]:
    """Rank 1..13, or None for a printed joker."""
    return None if card == JOKER else card % 13 + 1


def suit_of(card: Card) -> Optional[int]:
    return None if card == JOKER else card // 13


def is_joker(card: Card, wcj: Optional[int]) -> bool:
    """True for printed jokers and for any card of the wildcard rank."""
    return card == JOKER or (wcj is not None and card % 13 + 1 == wcj)


def card_points(card: Card, wcj: Optional[int] = None) -> int:
    """Deadwood value: A/J/Q/K 10, pips face value, jokers and wildcards 0."""
    if is_joker(card, wcj):
        return 0
    r = card % 13 + 1
    return 10 if r == 1 or r >= 11 else r


def card_str(card: Card) -> str:
    if card == JOKER:
        return "JK"
    return RANK_NAMES[card % 13] + SUITS[card // 13]


def parse_card(token: str) -> Card:
    t = token.strip().upper()
    if t in ("JK", "JOKER"):
        return JOKER
    if len(t) < 2 or t[-1] not in SUITS:
        raise CardParseError(token)
    rank_txt = t[:-1]
    if rank_txt == "1" or rank_txt not in RANK_NAMES:
        raise CardParseError(token)
    return make_card(RANK_NAMES.index(rank_txt) + 1, SUITS.index(t[-1]))


def parse_rank(token: str) -> int:
    t = token.strip().upper()
    if t not in RANK_NAMES:
        raise CardParseError(token)
    return RANK_NAMES.index(t) + 1


def rank_str(rank: Optional[int]) -> str:
    return "none" if rank is None else RANK_NAMES[rank - 1]


def parse_hand(text: str | Iterable[str]) -> list[Card]:
    tokens = text.replace(",", " ").split() if isinstance(text, str) else list(text)
    return [parse_card(t) for t in tokens]


def hand_str(cards: Iterable[Card]) -> str:
    return " ".join(card_str(c) for c in sorted(cards))


def new_deck() -> list[Card]:
    """Unshuffled pack: 52 standard cards in code order, then two jokers."""
    return list(range(52)) + [JOKER, JOKER]


@dataclass(frozen=True)
class Deal:
    hand1: tuple[Card, ...]
    hand2: tuple[Card, ...]
    stock: tuple[Card, ...]  # stock[0] is the top card
    open_card: Card
    exposed: Card
    wcj: Optional[int]


def deal(seed: int) -> Deal:
    """Shuffle and lay out one game.

    Layout of the shuffled pack: the first 26 cards go alternately to seat 1
    and seat 2, card 27 is exposed face-up and fixes the wildcard rank (it
    stays out of play), card 28 opens the discard pile and the last 26 form
    the stock. An exposed printed joker means there is no wildcard rank.
    """
    cards = new_deck()
    SplitMix64(derive_seed(seed, STREAM_DEAL)).shuffle(cards)
    exposed = cards[26]
    return Deal(
        hand1=tuple(cards[0:26:2]),
        hand2=tuple(cards[1:26:2]),
        stock=tuple(cards[28:]),
        open_card=cards[27],
        exposed=exposed,
        wcj=rank_of(exposed),
    )
