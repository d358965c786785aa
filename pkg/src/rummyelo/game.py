"""One two-player game: deal, alternating draw/discard turns, scoring."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Optional

from .cards import Card, card_str, deal, new_deck
from .melds import SCORE_CAP, min_score
from .rng import STREAM_RESHUFFLE, STREAM_SEAT1, STREAM_SEAT2, SplitMix64, derive_seed

if TYPE_CHECKING:
    from .agents import Strategy

DRAW_STOCK = "stock"
DRAW_OPEN = "discard"

DECLARATION = "declaration"
STOCK_EXHAUSTED = "stock_exhausted_draw"
TURN_CAP = "turn_cap_draw"

DEFAULT_TURN_CAP = 200


class ProtocolViolation(RuntimeError):
    """A strategy asked for an illegal action."""

    def __init__(self, seat: int, message: str, seed: Optional[int] = None) -> None:
        where = f"seat {seat}" + (f" (game seed {seed})" if seed is not None else "")
        super().__init__(f"{where}: {message}")
        self.seat = seat
        self.seed = seed


@dataclass(frozen=True)
class PlayerView:
    """Everything a strategy may look at when choosing an action."""

    seat: int  # 1 or 2
    hand: tuple[Card, ...]
    open_card: Optional[Card]
    wcj: Optional[int]
    opp_discards: tuple[Card, ...]
    stock_available: bool = True


@dataclass
class GameState:
    hands: list[list[Card]]
    stock: list[Card]  # stock[-1] is the top card
    discard_pile: list[Card]  # discard_pile[-1] is the open card
    wcj: Optional[int]
    exposed: Card
    turn: int = 0  # seat index 0/1 of the player to act
    turn_count: int = 0
    drawn: bool = False  # current player has drawn and must discard
    discards: list[list[Card]] = field(default_factory=lambda: [[], []])

    @property
    def open_card(self) -> Optional[Card]:
        return self.discard_pile[-1] if self.discard_pile else None

    def view(self, seat_index: int) -> PlayerView:
        return PlayerView(
            seat=seat_index + 1,
            hand=tuple(self.hands[seat_index]),
            open_card=self.open_card,
            wcj=self.wcj,
            opp_discards=tuple(self.discards[1 - seat_index]),
            stock_available=bool(self.stock),
        )

    def check_conservation(self) -> None:
        cards = self.hands[0] + self.hands[1] + self.stock + self.discard_pile + [self.exposed]
        if Counter(cards) != Counter(new_deck()):
            raise AssertionError("card multiset no longer matches the pack")


@dataclass(frozen=True)
class GameRecord:
    seat1: str
    seat2: str
    h1: int
    h2: int
    a1: int
    a2: int
    w1: float
    w2: float
    turns: int
    termination: str
    seed: int

    @property
    def decided(self) -> bool:
        return self.termination == DECLARATION


def legal_actions(state: GameState) -> list[object]:
    """Draw options before the draw, otherwise the cards that may be discarded."""
    if state.drawn:
        return list(state.hands[state.turn])
    actions: list[object] = []
    if state.stock:
        actions.append(DRAW_STOCK)
    if state.discard_pile:
        actions.append(DRAW_OPEN)
    return actions


def initial_state(seed: int) -> GameState:
    d = deal(seed)
    return GameState(
        hands=[list(d.hand1), list(d.hand2)],
        stock=list(reversed(d.stock)),
        discard_pile=[d.open_card],
        wcj=d.wcj,
        exposed=d.exposed,
    )


def play_game(
    strategy1: Strategy,
    strategy2: Strategy,
    seed: int,
    *,
    turn_cap: int = DEFAULT_TURN_CAP,
    log: Optional[Callable[[str], None]] = None,
    check: bool = False,
) -> GameRecord:
    """Play one game between two strategies; deterministic in ``seed``.

    ``log`` receives one line per draw, per discard and for the declaration.
    ``check`` verifies card conservation after every half-move.
    """
    return run_game(strategy1, strategy2, seed, turn_cap=turn_cap, log=log, check=check)[0]


def run_game(
    strategy1: Strategy,
    strategy2: Strategy,
    seed: int,
    *,
    state: Optional[GameState] = None,
    turn_cap: int = DEFAULT_TURN_CAP,
    log: Optional[Callable[[str], None]] = None,
    check: bool = False,
) -> tuple[GameRecord, GameState]:
    """Like :func:`play_game`, optionally from a prepared state; also returns the final state."""
    if state is None:
        state = initial_state(seed)
    strategies = (strategy1, strategy2)
    rngs = (
        SplitMix64(derive_seed(seed, STREAM_SEAT1)),
        SplitMix64(derive_seed(seed, STREAM_SEAT2)),
    )
    wcj = state.wcj
    h = (min_score(state.hands[0], wcj), min_score(state.hands[1], wcj))
    reshuffles = 0
    termination = TURN_CAP
    winner: Optional[int] = None

    while state.turn_count < turn_cap:
        seat = state.turn
        hand = state.hands[seat]
        if not state.stock:
            rest = state.discard_pile[:-1]
            if not rest:
                termination = STOCK_EXHAUSTED
                break
            reshuffles += 1
            SplitMix64(derive_seed(seed, STREAM_RESHUFFLE, reshuffles)).shuffle(rest)
            state.stock = rest
            state.discard_pile = state.discard_pile[-1:]

        choice = strategies[seat].choose_draw(state.view(seat), rngs[seat])
        if choice == DRAW_STOCK:
            card = state.stock.pop()
        elif choice == DRAW_OPEN and state.discard_pile:
            card = state.discard_pile.pop()
        else:
            raise ProtocolViolation(seat + 1, f"illegal draw {choice!r}", seed)
        hand.append(card)
        state.drawn = True
        state.turn_count += 1
        if log:
            log(f"{state.turn_count} P{seat + 1} draw-{choice} {card_str(card)}")
        if check:
            state.check_conservation()

        out = strategies[seat].choose_discard(state.view(seat), rngs[seat])
        if out not in hand:
            raise ProtocolViolation(seat + 1, f"discarded a card not held: {out!r}", seed)
        hand.remove(out)
        state.discard_pile.append(out)
        state.discards[seat].append(out)
        state.drawn = False
        if log:
            log(f"{state.turn_count} P{seat + 1} discard {card_str(out)}")
        if check:
            state.check_conservation()

        if min_score(hand, wcj) == 0:
            termination = DECLARATION
            winner = seat
            if log:
                log(f"{state.turn_count} P{seat + 1} declare")
            break
        state.turn = 1 - seat

    a = [min(SCORE_CAP, min_score(state.hands[i], wcj)) for i in (0, 1)]
    if winner is None:
        w = (0.5, 0.5)
    else:
        a[winner] = 0
        w = (1.0, 0.0) if winner == 0 else (0.0, 1.0)
    record = GameRecord(
        seat1=strategy1.id,
        seat2=strategy2.id,
        h1=h[0],
        h2=h[1],
        a1=a[0],
        a2=a[1],
        w1=w[0],
        w2=w[1],
        turns=state.turn_count,
        termination=termination,
        seed=seed,
    )
    return record, state
