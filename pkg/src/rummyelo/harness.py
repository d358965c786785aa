"""Round-robin tournament: schedule, simulation, ordered rating replay, stats."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import fmean, stdev
from typing import Callable, Iterable, Optional, Sequence

from .agents import LABELS, STRATEGY_IDS, DEFAULT_THRESHOLD, make_strategy
from .game import DEFAULT_TURN_CAP, GameRecord, play_game
from .ratings import (
    TRADITIONAL_K,
    RatingParams,
    RatingState,
    UpdateResult,
    custom_update,
    traditional_update,
)
from .rng import STREAM_GAME, STREAM_SCHEDULE, SplitMix64, derive_seed

CUSTOM = "custom"
TRADITIONAL = "traditional"
SYSTEMS = (CUSTOM, TRADITIONAL)
DESK_GAMES = 150
PAPER_GAMES = 4500
DEFAULT_WINDOW = 500


class HarnessError(ValueError):
    pass


@dataclass(frozen=True)
class ScheduleConfig:
    strategies: tuple[str, ...] = STRATEGY_IDS
    games_per_directed_pair: int = DESK_GAMES
    master_seed: int = 0
    rating_systems: tuple[str, ...] = SYSTEMS
    params: RatingParams = field(default_factory=RatingParams)
    traditional_k: float = TRADITIONAL_K
    threshold: int = DEFAULT_THRESHOLD
    turn_cap: int = DEFAULT_TURN_CAP
    window: int = DEFAULT_WINDOW
    burn_in: float = 0.0
    threads: int = 1


@dataclass(frozen=True)
class ScheduledGame:
    index: int  # position in the global (shuffled) order
    seat1: str
    seat2: str
    seed: int


@dataclass(frozen=True)
class SummaryRow:
    strategy: str
    mean: float
    sd: float
    cv_percent: float
    games: int


@dataclass
class AuditRow:
    game_index: int
    seat1: str
    seat2: str
    d_r: float
    d_h: float
    b1: float
    b2: float
    delta1: float
    delta2: float
    applied: bool
    skipped: bool


Trajectory = dict[str, list[tuple[int, float]]]


@dataclass
class RunResult:
    schedule: list[ScheduledGame]
    records: list[GameRecord]
    trajectories: dict[str, Trajectory]
    summaries: dict[str, list[SummaryRow]]
    audit: list[AuditRow]

    @property
    def participations(self) -> int:
        return 2 * len(self.records)


def build_schedule(cfg: ScheduleConfig) -> list[ScheduledGame]:
    """Every directed pair ``games_per_directed_pair`` times, globally shuffled.

    Seeds are tied to the canonical (unshuffled) position, so a game's deal
    does not depend on where the shuffle puts it.
    """
    if len(set(cfg.strategies)) != len(cfg.strategies) or len(cfg.strategies) < 2:
        raise HarnessError("need at least two distinct strategies")
    if cfg.games_per_directed_pair < 1:
        raise HarnessError("games_per_directed_pair must be positive")
    canon = []
    for a in cfg.strategies:
        for b in cfg.strategies:
            if a == b:
                continue
            for _ in range(cfg.games_per_directed_pair):
                canon.append((a, b, derive_seed(cfg.master_seed, STREAM_GAME, len(canon))))
    SplitMix64(derive_seed(cfg.master_seed, STREAM_SCHEDULE)).shuffle(canon)
    return [ScheduledGame(i, a, b, s) for i, (a, b, s) in enumerate(canon)]


def _play(args: tuple[str, str, int, int, int]) -> GameRecord:
    a, b, seed, threshold, turn_cap = args
    return play_game(make_strategy(a, threshold), make_strategy(b, threshold), seed, turn_cap=turn_cap)


def simulate(
    schedule: Sequence[ScheduledGame],
    threshold: int = DEFAULT_THRESHOLD,
    turn_cap: int = DEFAULT_TURN_CAP,
    threads: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> list[GameRecord]:
    jobs = [(g.seat1, g.seat2, g.seed, threshold, turn_cap) for g in schedule]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_play, jobs, chunksize=64))
    out = []
    for i, job in enumerate(jobs):
        out.append(_play(job))
        if progress and (i + 1) % 500 == 0:
            progress(i + 1, len(jobs))
    return out


def replay_custom(
    records: Iterable[GameRecord],
    params: RatingParams,
    strategies: Iterable[str],
    on_update: Optional[Callable[[int, GameRecord, Optional[UpdateResult], dict[str, RatingState]], None]] = None,
) -> dict[str, RatingState]:
    params.validate()
    states = {s: RatingState() for s in strategies}
    for i, rec in enumerate(records):
        res = custom_update(states[rec.seat1], states[rec.seat2], rec, params)
        if on_update:
            on_update(i, rec, res, states)
    return states


def rate(
    schedule: Sequence[ScheduledGame],
    records: Sequence[GameRecord],
    cfg: ScheduleConfig,
) -> tuple[dict[str, Trajectory], list[AuditRow]]:
    """Replay ratings strictly in schedule order for each enabled system."""
    trajectories: dict[str, Trajectory] = {}
    audit: list[AuditRow] = []
    if CUSTOM in cfg.rating_systems:
        traj: Trajectory = {s: [] for s in cfg.strategies}

        def record(i: int, rec: GameRecord, res: Optional[UpdateResult], states: dict[str, RatingState]) -> None:
            idx = schedule[i].index
            traj[rec.seat1].append((idx, states[rec.seat1].rating))
            traj[rec.seat2].append((idx, states[rec.seat2].rating))
            if res is None:
                audit.append(AuditRow(idx, rec.seat1, rec.seat2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, False, True))
            else:
                audit.append(
                    AuditRow(idx, rec.seat1, rec.seat2, res.d_r, res.d_h, res.b1, res.b2, res.delta1, res.delta2, res.applied, False)
                )

        replay_custom(records, cfg.params, cfg.strategies, record)
        trajectories[CUSTOM] = traj
    if TRADITIONAL in cfg.rating_systems:
        states = {s: RatingState() for s in cfg.strategies}
        traj = {s: [] for s in cfg.strategies}
        for g, rec in zip(schedule, records):
            traditional_update(states[rec.seat1], states[rec.seat2], rec, cfg.traditional_k)
            traj[rec.seat1].append((g.index, states[rec.seat1].rating))
            traj[rec.seat2].append((g.index, states[rec.seat2].rating))
        trajectories[TRADITIONAL] = traj
    return trajectories, audit


def run(cfg: ScheduleConfig, progress: Optional[Callable[[int, int], None]] = None) -> RunResult:
    for system in cfg.rating_systems:
        if system not in SYSTEMS:
            raise HarnessError(f"unknown rating system {system!r}")
    schedule = build_schedule(cfg)
    records = simulate(schedule, cfg.threshold, cfg.turn_cap, cfg.threads, progress)
    trajectories, audit = rate(schedule, records, cfg)
    summaries = {
        system: summarize_all(traj, cfg.strategies, cfg.burn_in) for system, traj in trajectories.items()
    }
    return RunResult(schedule, records, trajectories, summaries, audit)


def moving_average(values: Sequence[float], window: int) -> list[float]:
    """Trailing mean over the last ``window`` points; shorter prefixes use what exists."""
    if window < 1:
        raise HarnessError("window must be at least 1")
    if window > len(values):
        raise HarnessError(f"window {window} exceeds series length {len(values)}")
    # fsum per window: a running total drifts once values differ in magnitude
    return [math.fsum(values[max(0, i + 1 - window) : i + 1]) / min(i + 1, window) for i in range(len(values))]


def summarize(values: Sequence[float], burn_in: float = 0.0) -> tuple[float, float, float]:
    """(mean, sample sd, cv %) over the values after the burn-in fraction."""
    if not 0 <= burn_in < 1:
        raise HarnessError("burn_in must be in [0, 1)")
    tail = values[math.floor(len(values) * burn_in) :]
    if not tail:
        raise HarnessError("no samples after burn-in")
    mean = fmean(tail)
    sd = stdev(tail) if len(tail) > 1 else 0.0
    cv = 100.0 * sd / mean if mean > 0 else float("nan")
    return mean, sd, cv


def summarize_all(traj: Trajectory, strategies: Iterable[str], burn_in: float = 0.0) -> list[SummaryRow]:
    rows = []
    for s in strategies:
        values = [r for _, r in traj[s]]
        mean, sd, cv = summarize(values, burn_in)
        rows.append(SummaryRow(s, mean, sd, cv, len(values)))
    return rows


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

RECORD_COLUMNS = ("game_index", "seat1", "seat2", "seed", "h1", "h2", "a1", "a2", "w1", "w2", "turns", "termination")
TRAJECTORY_COLUMNS = ("game_index", "strategy", "raw", "smoothed")
SUMMARY_COLUMNS = ("strategy", "label", "mean", "sd", "cv_percent", "games")
AUDIT_COLUMNS = ("game_index", "seat1", "seat2", "d_r", "d_h", "b1", "b2", "delta1", "delta2", "applied", "skipped")


def _fmt(x: float) -> str:
    return repr(float(x))


def write_records(path: Path, schedule: Sequence[ScheduledGame], records: Sequence[GameRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(RECORD_COLUMNS)
        for g, r in zip(schedule, records):
            w.writerow([g.index, r.seat1, r.seat2, r.seed, r.h1, r.h2, r.a1, r.a2, r.w1, r.w2, r.turns, r.termination])


def read_records(path: Path) -> list[GameRecord]:
    """Records in file order (the schedule order they were written in)."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(
                GameRecord(
                    seat1=row["seat1"],
                    seat2=row["seat2"],
                    h1=int(row["h1"]),
                    h2=int(row["h2"]),
                    a1=int(row["a1"]),
                    a2=int(row["a2"]),
                    w1=float(row["w1"]),
                    w2=float(row["w2"]),
                    turns=int(row["turns"]),
                    termination=row["termination"],
                    seed=int(row["seed"]),
                )
            )
    return out


def write_trajectory(path: Path, traj: Trajectory, strategies: Iterable[str], window: int) -> None:
    rows = []
    for s in strategies:
        points = traj[s]
        smooth = moving_average([r for _, r in points], min(window, len(points)))
        rows.extend((idx, s, raw, sm) for (idx, raw), sm in zip(points, smooth))
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(TRAJECTORY_COLUMNS)
        for idx, s, raw, sm in rows:
            w.writerow([idx, s, _fmt(raw), _fmt(sm)])


def write_summary(path: Path, rows: Sequence[SummaryRow]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for r in rows:
            w.writerow([r.strategy, LABELS.get(r.strategy, r.strategy), _fmt(r.mean), _fmt(r.sd), _fmt(r.cv_percent), r.games])


def write_audit(path: Path, rows: Sequence[AuditRow]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(AUDIT_COLUMNS)
        for a in rows:
            w.writerow(
                [a.game_index, a.seat1, a.seat2, _fmt(a.d_r), _fmt(a.d_h), _fmt(a.b1), _fmt(a.b2), _fmt(a.delta1), _fmt(a.delta2), int(a.applied), int(a.skipped)]
            )


def format_summary(system: str, rows: Sequence[SummaryRow]) -> str:
    lines = [f"{system} Elo", f"{'Strategy':<18}{'Mean':>10}{'SD':>10}{'CV (%)':>10}"]
    for r in sorted(rows, key=lambda r: -r.mean):
        lines.append(f"{LABELS.get(r.strategy, r.strategy):<18}{r.mean:>10.3f}{r.sd:>10.3f}{r.cv_percent:>10.3f}")
    return "\n".join(lines)
