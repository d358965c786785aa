"""Exact meld arithmetic: declarations, MinScore and MinDist.

A hand is split into *naturals* (standard cards whose rank is not the
wildcard rank) and *jokers* (printed jokers plus wildcard-rank cards). Jokers
are fungible, so an arrangement is a set of disjoint groups of naturals, each
with the number of jokers it needs:

* pure sequence: three or more consecutive same-suit naturals, no jokers;
* impure sequence: same-suit naturals whose gaps (and length up to 3) are
  filled by jokers;
* set: same-rank naturals padded with jokers to 3 or 4 cards.

Every group contains at least one natural. Jokers left over after arranging
the naturals are attached to a sequence, so they never block a declaration.
Aces sit below the 2 or above the king, never both, and runs do not wrap.

Deadwood follows the usual ladder: with no pure sequence every card counts,
with a pure sequence but no second sequence only the pure sequence is
excused, and once there are two sequences (one pure) every melded card is
excused. The result is capped at 80.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Iterable, Optional, Sequence

from .cards import HAND_SIZE, Card, card_points, card_str, is_joker

SCORE_CAP = 80

SET, IMPURE, PURE = 0, 1, 2
KIND_NAMES = {SET: "set", IMPURE: "impure", PURE: "pure"}

# search state: has_pure * 3 + min(sequences, 2); 5 means "declaration ready"
_DONE = 5
_NEXT = {
    SET: [s for s in range(6)],
    IMPURE: [(s // 3) * 3 + min(s % 3 + 1, 2) for s in range(6)],
    PURE: [3 + min(s % 3 + 1, 2) for s in range(6)],
}
_NEG = -(10**6)

# generic joker slots allowed in a single MinDist template beyond the hand's
# own jokers; templates needing more imply a distance above this bound
DIST_SLOT_SLACK = 6


class HandSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Meld:
    kind: str
    cards: tuple[Card, ...]

    def __str__(self) -> str:
        return f"{self.kind}[{' '.join(card_str(c) for c in self.cards)}]"


@dataclass(frozen=True)
class HandMetrics:
    min_score: int
    min_dist: int
    declarable: bool


@dataclass(frozen=True)
class Arrangement:
    """A deadwood-minimising arrangement of a hand."""

    melds: tuple[Meld, ...]
    deadwood: tuple[Card, ...]
    score: int


def _check_size(hand: Sequence[Card], size: int) -> None:
    if len(hand) != size:
        raise HandSizeError(f"expected {size} cards, got {len(hand)}")


def _split(hand: Iterable[Card], wcj: Optional[int]) -> tuple[tuple[Card, ...], int]:
    nat = []
    jokers = 0
    for c in hand:
        if is_joker(c, wcj):
            jokers += 1
        else:
            nat.append(c)
    nat.sort()
    return tuple(nat), jokers


def _seq_entries(nat: Sequence[Card]) -> list[list[tuple[int, int]]]:
    """Per suit, (position, local index) pairs; an ace appears at 1 and 14."""
    by_suit: list[list[tuple[int, int]]] = [[], [], [], []]
    for i, c in enumerate(nat):
        pos = c % 13 + 1
        by_suit[c // 13].append((pos, i))
        if pos == 1:
            by_suit[c // 13].append((14, i))
    for entries in by_suit:
        entries.sort()
    return by_suit


def _seq_subsets(entries: list[tuple[int, int]], tcap: int):
    """Yield (mask, positions, span_lo, span_hi, joker_slots) for sequence groups.

    Groups are chosen by their lowest and highest member; cards strictly
    between may be skipped (their slot then takes a joker).
    """
    n = len(entries)
    for a in range(n):
        lo = entries[a][0]
        for b in range(a, n):
            hi = entries[b][0]
            if b != a and entries[a][1] == entries[b][1]:
                continue  # ace used at both ends
            span = hi - lo + 1
            window = b - a + 1
            if span - window > tcap:
                break
            interior = entries[a + 1 : b]
            max_skip = min(len(interior), tcap - (span - window))
            for k in range(max_skip + 1):
                size = window - k
                t = max(3, span) - size
                if t > tcap:
                    break
                for skipped in combinations(range(len(interior)), k):
                    mask = (1 << entries[a][1]) | (1 << entries[b][1])
                    skip = set(skipped)
                    for m, (_, idx) in enumerate(interior):
                        if m not in skip:
                            mask |= 1 << idx
                    positions = [entries[a][0], entries[b][0]] if b != a else [lo]
                    positions += [p for m, (p, _) in enumerate(interior) if m not in skip]
                    yield mask, positions, lo, hi, t


def _rank_groups(nat: Sequence[Card]) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(nat):
        groups.setdefault(c % 13, []).append(i)
    return groups


# ---------------------------------------------------------------------------
# MinScore
# ---------------------------------------------------------------------------


class _ScoreSolver:
    """Memoised exact search over groups for one set of naturals.

    The same solver (and memo table) serves every sub-hand obtained by
    removing cards, which is what makes the 14-card queries cheap.
    """

    def __init__(self, nat: tuple[Card, ...], jokers: int, wcj: Optional[int]) -> None:
        self.nat = nat
        self.jokers = jokers
        n = len(nat)
        self.pts = [card_points(c, wcj) for c in nat]
        found: dict[int, tuple[int, int]] = {}

        def add(mask: int, t: int, kind: int) -> None:
            old = found.get(mask)
            if old is None or t < old[0] or (t == old[0] and kind > old[1]):
                found[mask] = (t, kind)

        for entries in _seq_entries(nat):
            for mask, _, _, _, t in _seq_subsets(entries, jokers):
                add(mask, t, PURE if t == 0 else IMPURE)
        for idxs in _rank_groups(nat).values():
            for k in range(1, min(4, len(idxs)) + 1):
                t = max(0, 3 - k)
                if t > jokers:
                    continue
                for combo in combinations(idxs, k):
                    mask = 0
                    for i in combo:
                        mask |= 1 << i
                    add(mask, t, SET)

        self.by_low: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
        self.pure: list[tuple[int, int]] = []
        self.union = 0
        for mask, (t, kind) in found.items():
            p = sum(self.pts[i] for i in range(n) if mask >> i & 1)
            low = (mask & -mask).bit_length() - 1
            self.by_low[low].append((mask, t, p, kind))
            if kind == PURE:
                self.pure.append((mask, p))
            self.union |= mask
        for lst in self.by_low:
            lst.sort(key=lambda m: -m[2])
        self.memo: dict[int, int] = {}

    def mask_points(self, mask: int) -> int:
        pts = self.pts
        total = 0
        while mask:
            low = mask & -mask
            total += pts[low.bit_length() - 1]
            mask ^= low
        return total

    def best_melded(self, mask: int, jl: int, st: int = 0) -> int:
        """Max melded points within ``mask`` reaching a declaration-ready state."""
        if not mask:
            return 0 if st == _DONE else _NEG
        key = (mask << 7) | (jl << 3) | st
        memo = self.memo
        v = memo.get(key)
        if v is not None:
            return v
        i = (mask & -mask).bit_length() - 1
        best = self.best_melded(mask & (mask - 1), jl, st)
        for m, t, p, kind in self.by_low[i]:
            if t <= jl and m & mask == m:
                v = p + self.best_melded(mask ^ m, jl - t, _NEXT[kind][st])
                if v > best:
                    best = v
        memo[key] = best
        return best

    def score(self, mask: int, jl: int) -> int:
        total = self.mask_points(mask)
        if total - self.mask_points(self.union & mask) >= SCORE_CAP:
            return SCORE_CAP
        best = total
        for m, p in self.pure:
            if m & mask == m and total - p < best:
                best = total - p
        melded = self.best_melded(mask, jl)
        if melded >= 0 and total - melded < best:
            best = total - melded
        return min(best, SCORE_CAP)

    def arrangement(self, mask: int, jl: int) -> tuple[list[tuple[int, int, int]], int]:
        """Groups (mask, jokers, kind) realising :meth:`score`, plus the score."""
        total = self.mask_points(mask)
        options: list[tuple[int, list[tuple[int, int, int]]]] = [(total, [])]
        for m, p in self.pure:
            if m & mask == m:
                options.append((total - p, [(m, 0, PURE)]))
        melded = self.best_melded(mask, jl)
        if melded >= 0:
            groups = []
            m_left, j_left, st = mask, jl, 0
            while m_left:
                target = self.best_melded(m_left, j_left, st)
                i = (m_left & -m_left).bit_length() - 1
                for m, t, p, kind in self.by_low[i]:
                    if t <= j_left and m & m_left == m:
                        if p + self.best_melded(m_left ^ m, j_left - t, _NEXT[kind][st]) == target:
                            groups.append((m, t, kind))
                            m_left, j_left, st = m_left ^ m, j_left - t, _NEXT[kind][st]
                            break
                else:
                    m_left &= m_left - 1
            options.append((total - melded, groups))
        score, groups = min(options, key=lambda o: o[0])
        return groups, min(score, SCORE_CAP)


@lru_cache(maxsize=65536)
def _score_key(nat: tuple[Card, ...], jokers: int, wcj: Optional[int]) -> int:
    solver = _ScoreSolver(nat, jokers, wcj)
    return solver.score((1 << len(nat)) - 1, jokers)


def min_score(hand: Sequence[Card], wcj: Optional[int]) -> int:
    """Minimum deadwood of a 13-card hand (0 means declarable, capped at 80)."""
    _check_size(hand, HAND_SIZE)
    nat, jokers = _split(hand, wcj)
    return _score_key(nat, jokers, wcj)


def is_valid_declaration(hand: Sequence[Card], wcj: Optional[int]) -> bool:
    """At least two sequences, one of them pure, and every card in a group."""
    _check_size(hand, HAND_SIZE)
    return min_score(hand, wcj) == 0


def arrange(hand: Sequence[Card], wcj: Optional[int]) -> Arrangement:
    """An arrangement achieving :func:`min_score`."""
    _check_size(hand, HAND_SIZE)
    nat, jokers = _split(hand, wcj)
    solver = _ScoreSolver(nat, jokers, wcj)
    full = (1 << len(nat)) - 1
    groups, score = solver.arrangement(full, jokers)
    joker_cards = [c for c in hand if is_joker(c, wcj)]
    melds = []
    used = 0
    for m, t, kind in groups:
        cards = [nat[i] for i in range(len(nat)) if m >> i & 1]
        cards += joker_cards[:t]
        joker_cards = joker_cards[t:]
        melds.append(Meld(KIND_NAMES[kind], tuple(cards)))
        used |= m
    deadwood = [nat[i] for i in range(len(nat)) if not used >> i & 1]
    if score == 0 and joker_cards and melds:
        # spare jokers ride along on a sequence
        for k, meld in enumerate(melds):
            if meld.kind != "set":
                melds[k] = Meld("impure", meld.cards + tuple(joker_cards))
                break
        joker_cards = []
    deadwood += joker_cards
    return Arrangement(tuple(melds), tuple(deadwood), score)


def discard_scores(hand: Sequence[Card], wcj: Optional[int]) -> dict[Card, int]:
    """MinScore of the 13 cards left after each possible discard."""
    _check_size(hand, HAND_SIZE + 1)
    nat, jokers = _split(hand, wcj)
    return _expand_jokers(hand, wcj, dict(_discard_scores_key(nat, jokers, wcj)))


@lru_cache(maxsize=32768)
def _discard_scores_key(nat: tuple[Card, ...], jokers: int, wcj: Optional[int]) -> tuple[tuple[Card, int], ...]:
    solver = _ScoreSolver(nat, jokers, wcj)
    full = (1 << len(nat)) - 1
    out = []
    for i, c in enumerate(nat):
        out.append((c, solver.score(full ^ (1 << i), jokers)))
    if jokers:
        score = solver.score(full, jokers - 1)
        # every joker card of the hand gives the same result
        out.append((-1, score))
    return tuple(out)


def _expand_jokers(hand: Sequence[Card], wcj: Optional[int], table: dict[Card, int]) -> dict[Card, int]:
    joker_value = table.pop(-1, None)
    if joker_value is not None:
        for c in hand:
            if is_joker(c, wcj):
                table[c] = joker_value
    return table


def _remove(hand: Sequence[Card], card: Card) -> tuple[Card, ...]:
    out = list(hand)
    out.remove(card)
    return tuple(out)


def discard_key(card: Card, wcj: Optional[int]) -> tuple[int, Card]:
    """Tie-break among equally good discards: higher points first, then code."""
    return (-card_points(card, wcj), card)


def min_score14(hand: Sequence[Card], wcj: Optional[int]) -> tuple[tuple[Card, ...], int]:
    """Best 13 of 14 cards by MinScore, and that score.

    Ties go to the discard worth more points, then to the lower card code.
    """
    table = discard_scores(hand, wcj)
    card = min(table, key=lambda c: (table[c],) + discard_key(c, wcj))
    return _remove(hand, card), table[card]


# ---------------------------------------------------------------------------
# MinDist
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Template:
    mask: int  # hand naturals kept in this group
    kind: int
    outside: int  # specific outside naturals (pure runs only)
    outside_codes: int  # bitset over card codes of those outside naturals
    slots: int  # generic joker-or-natural slots
    blocked: int  # slots whose natural is in the hand, so only a joker fits


@lru_cache(maxsize=16384)
def _suit_templates(nat: tuple[Card, ...], tcap: int) -> tuple[_Template, ...]:
    """Sequence groups over one suit's naturals; masks index into ``nat``."""
    local = {c: i for i, c in enumerate(nat)}
    in_hand = set(nat)
    out: dict[tuple[int, int, int], _Template] = {}

    def add(t: _Template) -> None:
        key = (t.mask, t.kind, t.outside_codes)
        old = out.get(key)
        if old is None or (t.slots, t.blocked) < (old.slots, old.blocked):
            out[key] = t

    def code_at(suit: int, pos: int) -> Card:
        return suit * 13 + (0 if pos == 14 else pos - 1)

    # pure runs; a run longer than three whose end card is missing is
    # dominated by the shorter run, so runs are either three long or end on
    # held cards at both sides
    runs: set[tuple[int, int, int]] = set()
    for entries_suit, entries in enumerate(_seq_entries(nat)):
        positions = sorted({p for p, _ in entries})
        for p in positions:
            for lo in range(max(1, p - 2), min(p, 12) + 1):
                runs.add((entries_suit, lo, lo + 2))
        for x in range(len(positions)):
            for y in range(x + 1, len(positions)):
                lo, hi = positions[x], positions[y]
                if hi - lo >= 3 and not (lo == 1 and hi == 14):
                    runs.add((entries_suit, lo, hi))
    for suit, lo, hi in runs:
        if lo == 1 and hi == 14:
            continue
        mask = 0
        outside = 0
        outside_codes = 0
        for p in range(lo, hi + 1):
            c = code_at(suit, p)
            if c in in_hand:
                mask |= 1 << local[c]
            else:
                outside += 1
                outside_codes |= 1 << c
        if mask:
            add(_Template(mask, PURE, outside, outside_codes, 0, 0))

    for suit, entries in enumerate(_seq_entries(nat)):
        for mask, positions, lo, hi, t in _seq_subsets(entries, tcap):
            if t == 0:
                continue  # complete natural run, covered above
            held = set(positions)
            gaps = [p for p in range(lo, hi + 1) if p not in held]
            blocked = sum(1 for p in gaps if code_at(suit, p) in in_hand)
            short = 3 - (hi - lo + 1)
            if short > 0:
                best_ext = None
                for start in range(max(1, hi - 2), lo + 1):
                    if start + 2 > 14 or (start == 1 and start + 2 >= 14):
                        continue
                    ext = [p for p in range(start, start + 3) if p < lo or p > hi]
                    if len(ext) != short:
                        continue
                    # an ace can't fill both ends of a window
                    if any(p in (1, 14) and 15 - p in held for p in ext):
                        continue
                    b = sum(1 for p in ext if code_at(suit, p) in in_hand)
                    if best_ext is None or b < best_ext:
                        best_ext = b
                if best_ext is None:
                    continue
                blocked += best_ext
            add(_Template(mask, IMPURE, 0, 0, t, blocked))

    return tuple(out.values())


def _dist_templates(nat: tuple[Card, ...], jokers: int) -> list[list[_Template]]:
    n = len(nat)
    tcap = jokers + DIST_SLOT_SLACK
    found: list[_Template] = []
    start = 0
    for suit in range(4):
        end = start
        while end < n and nat[end] // 13 == suit:
            end += 1
        if end > start:
            for t in _suit_templates(nat[start:end], tcap):
                found.append(_Template(t.mask << start, t.kind, t.outside, t.outside_codes, t.slots, t.blocked))
        start = end

    for idxs in _rank_groups(nat).values():
        free = 4 - len(idxs)
        for k in range(1, min(4, len(idxs)) + 1):
            t = max(0, 3 - k)
            for combo in combinations(idxs, k):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                found.append(_Template(mask, SET, 0, 0, t, t - min(t, free)))

    by_low: list[list[_Template]] = [[] for _ in range(n)]
    for t in found:
        by_low[(t.mask & -t.mask).bit_length() - 1].append(t)
    for lst in by_low:
        lst.sort(key=lambda t: (-bin(t.mask).count("1"), t.outside + t.slots))
    return by_low


_COST_SCALE = 360360  # lcm(1..13)


class _DistSolver:
    """Feasibility search for MinDist over one set of naturals.

    The search walks the naturals lowest first; each is dropped (replaced) or
    anchors a group. Progress is tracked as remaining budgets so the memo
    table is shared across distance targets, removed cards and joker counts:

    * drops left;
    * specific outside naturals left (pure runs need them);
    * fillers left beyond the hand's jokers (outside naturals plus slots);
    * slots that only a joker can fill.
    """

    def __init__(self, nat: tuple[Card, ...], jokers: int, wcj: Optional[int]) -> None:
        self.nat = nat
        self.jokers = jokers
        self.in_play = 1 if wcj is None else 5
        self.by_low = [
            [(t.mask, t.kind, t.outside, t.outside + t.slots, t.blocked, t.outside_codes) for t in lst]
            for lst in _dist_templates(nat, jokers)
        ]
        # cheapest share of fillers any group charges each card, scaled to
        # stay integral; the cheapest cards that cannot be dropped must pay
        # at least this much between them
        n = len(nat)
        cost = [_COST_SCALE * 3] * n
        for lst in self.by_low:
            for m, _, _, f, _, _ in lst:
                share = f * _COST_SCALE // bin(m).count("1")
                for i in range(n):
                    if m >> i & 1 and share < cost[i]:
                        cost[i] = share
        order = sorted(range(n), key=cost.__getitem__)
        self.cheapest = [(1 << i, cost[i]) for i in order]
        self.memo: dict[int, bool] = {}

    def within(self, mask: int, jokers: int, d: int) -> bool:
        """Whether the naturals in ``mask`` plus ``jokers`` are at most ``d`` replacements away.

        An arrangement certifies distance max(dropped, outside + max(0, slots -
        jokers)); when fillers outnumber drops the layout is too large and
        sheds cards until it holds 13.
        """
        by_low = self.by_low
        memo = self.memo
        nxt = _NEXT
        cheapest = self.cheapest

        def rec(mask: int, drops: int, outs: int, fills: int, blocked: int, used: int, st: int) -> bool:
            if not mask:
                if st < 3:
                    outs -= 3
                    fills -= 3
                    st = 3 + min(st % 3 + 1, 2)
                if st % 3 < 2:
                    outs -= 1
                    fills -= 3
                return outs >= 0 and fills >= 0
            key = ((((((used << 14 | mask) << 4 | drops) << 4 | outs) << 5 | fills) << 4 | blocked) << 3) | st
            v = memo.get(key)
            if v is not None:
                return v
            need = bin(mask).count("1") - drops
            if need > 0:
                paid = 0
                for bit, c in cheapest:
                    if mask & bit:
                        paid += c
                        need -= 1
                        if not need:
                            break
                if paid > fills * _COST_SCALE:
                    memo[key] = False
                    return False
            low = mask & -mask
            found = False
            for m, kind, o, f, b, codes in by_low[low.bit_length() - 1]:
                if (
                    m & mask == m
                    and o <= outs
                    and f <= fills
                    and b <= blocked
                    and not codes & used
                    and rec(mask ^ m, drops, outs - o, fills - f, blocked - b, used | codes, nxt[kind][st])
                ):
                    found = True
                    break
            if not found and drops:
                found = rec(mask ^ low, drops - 1, outs, fills, blocked, used, st)
            memo[key] = found
            return found

        blocked = min(15, max(jokers, self.in_play))
        return rec(mask, d, d, d + jokers, blocked, 0, 0)


@lru_cache(maxsize=4096)
def _dist_solver(nat: tuple[Card, ...], jokers: int, wcj: Optional[int]) -> _DistSolver:
    return _DistSolver(nat, jokers, wcj)


_dist_values: dict[tuple[tuple[Card, ...], int, Optional[int]], int] = {}
_DIST_CACHE_MAX = 200_000


def _remember_dist(key: tuple[tuple[Card, ...], int, Optional[int]], value: int) -> None:
    if len(_dist_values) >= _DIST_CACHE_MAX:
        _dist_values.clear()
    _dist_values[key] = value


def _dist13(nat: tuple[Card, ...], jokers: int, wcj: Optional[int]) -> int:
    key = (nat, jokers, wcj)
    v = _dist_values.get(key)
    if v is None:
        solver = _dist_solver(nat, jokers, wcj)
        full = (1 << len(nat)) - 1
        v = 0
        while not solver.within(full, jokers, v):
            v += 1
        _remember_dist(key, v)
    return v


def min_dist(hand: Sequence[Card], wcj: Optional[int]) -> int:
    """Fewest single-card replacements that turn the hand into a declaration.

    Replacement cards come from outside the hand; the exposed wildcard card is
    out of play, so the pool holds 5 jokers (1 when the exposed card was a
    printed joker) less those already held.
    """
    _check_size(hand, HAND_SIZE)
    nat, jokers = _split(hand, wcj)
    return _dist13(nat, jokers, wcj)


def _discard_dists_key(nat: tuple[Card, ...], jokers: int, wcj: Optional[int], floor: int) -> dict[Card, int]:
    solver = _dist_solver(nat, jokers, wcj)
    full = (1 << len(nat)) - 1
    d = max(0, floor)
    while True:
        tied: list[Card] = []
        if jokers and solver.within(full, jokers - 1, d):
            tied.append(-1)
            _remember_dist((nat, jokers - 1, wcj), d)
        for i, c in enumerate(nat):
            if solver.within(full ^ (1 << i), jokers, d):
                tied.append(c)
                _remember_dist((nat[:i] + nat[i + 1 :], jokers, wcj), d)
        if tied:
            break
        d += 1
    out = {c: d + 1 for c in nat}
    if jokers:
        out[-1] = d + 1
    for c in tied:
        out[c] = d
    return out


def discard_dists(hand: Sequence[Card], wcj: Optional[int], floor: int = 0) -> dict[Card, int]:
    """MinDist after each possible discard.

    Discards that tie for the best distance carry their exact value; every
    other discard is reported as best + 1, which is only a lower bound but is
    enough to rank them. ``floor`` is a known lower bound on the best
    distance (the 13-card distance minus one, when the caller has it).
    """
    _check_size(hand, HAND_SIZE + 1)
    nat, jokers = _split(hand, wcj)
    return _expand_jokers(hand, wcj, _discard_dists_key(nat, jokers, wcj, floor))


def min_dist14(
    hand: Sequence[Card], wcj: Optional[int], score_tiebreak: bool = True, floor: int = 0
) -> tuple[tuple[Card, ...], int]:
    """Best 13 of 14 cards by MinDist, and that distance.

    Ties go to the lower resulting MinScore (unless ``score_tiebreak`` is
    off), then to the discard worth more points, then to the lower card code.
    """
    table = discard_dists(hand, wcj, floor)
    best = min(table.values())
    tied = [c for c, d in table.items() if d == best]
    if score_tiebreak and len(tied) > 1:
        scores = discard_scores(hand, wcj)
        card = min(tied, key=lambda c: (scores[c],) + discard_key(c, wcj))
    else:
        card = min(tied, key=lambda c: discard_key(c, wcj))
    return _remove(hand, card), best


def dist_discard(
    hand: Sequence[Card],
    wcj: Optional[int],
    order: Callable[[Card], Any],
    floor: int = 0,
    ceiling: Optional[int] = None,
) -> Optional[tuple[Card, int]]:
    """Discard minimising MinDist, ties broken by ``order`` (smallest first).

    Candidates are tried in ``order`` at each distance from ``floor`` upward,
    so the search stops at the first feasible one. ``floor`` must be a valid
    lower bound; the 13-card distance before the draw, minus one, is one.
    Returns None when no discard reaches ``ceiling`` or better.
    """
    _check_size(hand, HAND_SIZE + 1)
    nat, jokers = _split(hand, wcj)
    solver = _dist_solver(nat, jokers, wcj)
    full = (1 << len(nat)) - 1
    index = {c: i for i, c in enumerate(nat)}
    cands = sorted(set(hand), key=order)
    d = max(0, floor)
    if ceiling is not None and d > ceiling:
        return None
    while True:
        for c in cands:
            if is_joker(c, wcj):
                ok = solver.within(full, jokers - 1, d)
                key = (nat, jokers - 1, wcj)
            else:
                i = index[c]
                ok = solver.within(full ^ (1 << i), jokers, d)
                key = (nat[:i] + nat[i + 1 :], jokers, wcj)
            if ok:
                _remember_dist(key, d)
                return c, d
        d += 1
        if ceiling is not None and d > ceiling:
            return None


def evaluate(hand: Sequence[Card], wcj: Optional[int]) -> HandMetrics:
    score = min_score(hand, wcj)
    return HandMetrics(score, min_dist(hand, wcj), score == 0)


def clear_caches() -> None:
    for fn in (_score_key, _discard_scores_key, _dist_solver, _suit_templates):
        fn.cache_clear()
    _dist_values.clear()
