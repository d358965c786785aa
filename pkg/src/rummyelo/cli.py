"""Command-line entry point: ``rummyelo <subcommand>``.

Exit codes: 0 success, 2 usage error, 3 configuration or I/O error, 4 a
strategy broke the game protocol.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

from .agents import STRATEGY_IDS, UnknownStrategy, make_strategy
from .cards import JOKER, CardParseError, card_str, hand_str, parse_hand, parse_rank, rank_str
from .config import ConfigError, RunConfig, load_config
from .game import ProtocolViolation, play_game
from .harness import (
    CUSTOM,
    HarnessError,
    ScheduledGame,
    format_summary,
    rate,
    read_records,
    run,
    summarize_all,
    write_audit,
    write_records,
    write_summary,
    write_trajectory,
)
from .melds import HandSizeError, arrange, evaluate
from .tuning import DegenerateFit, TuneConfig, default_grid, tune

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_RUNTIME = 4


class UsageError(Exception):
    pass


def _strategy_list(text: str) -> tuple[str, ...]:
    ids = tuple(s.strip() for s in text.split(",") if s.strip())
    for s in ids:
        if s not in STRATEGY_IDS:
            raise argparse.ArgumentTypeError(f"unknown strategy {s!r}; choose from {', '.join(STRATEGY_IDS)}")
    return ids


def _schedule(text: str) -> tuple[float, float, float, int, int]:
    parts = text.split(",")
    if len(parts) != 5:
        raise argparse.ArgumentTypeError("expected k1,k2,k3,p,q")
    return (float(parts[0]), float(parts[1]), float(parts[2]), int(parts[3]), int(parts[4]))


def _add_run_options(p: argparse.ArgumentParser, tuning: bool = False) -> None:
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--out", dest="output_dir", help="output directory")
    g = p.add_argument_group("rating parameters")
    g.add_argument("--k", type=float, help="constant K of the score-based system (negative)")
    g.add_argument("--k-schedule", type=_schedule, help="k1,k2,k3,p,q; implies --k-mode schedule")
    g.add_argument("--k-mode", choices=("constant", "schedule"))
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--traditional-k", type=float)
    g.add_argument("--systems", type=lambda s: tuple(x.strip() for x in s.split(",") if x.strip()))
    g.add_argument("--window", type=int, help="trailing moving-average window")
    g.add_argument("--burn-in", type=float, help="fraction of each trajectory excluded from summaries")
    if tuning:
        g.add_argument("--beta-min", type=float)
        g.add_argument("--beta-max", type=float)
        g.add_argument("--beta-points", type=int)
        g.add_argument("--split", type=float, help="training fraction")
        g.add_argument("--split-seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rummyelo", description="Indian Rummy simulator and rating lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the round-robin tournament and rate it")
    _add_run_options(p)
    p.add_argument("--seed", dest="master_seed", type=int)
    p.add_argument("--scale", choices=("desk", "paper"))
    p.add_argument("--games", dest="games_per_pair", type=int, help="games per directed pair (overrides --scale)")
    p.add_argument("--strategies", type=_strategy_list)
    p.add_argument("--threshold", type=int, help="MinScore pickup threshold")
    p.add_argument("--turn-cap", type=int)
    p.add_argument("--threads", type=int, help="worker processes for game simulation")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("tune", help="sweep beta over recorded games")
    p.add_argument("records", help="records.csv from simulate")
    _add_run_options(p, tuning=True)

    p = sub.add_parser("stats", help="re-rate recorded games and print summaries")
    p.add_argument("records", help="records.csv from simulate")
    _add_run_options(p)

    p = sub.add_parser("replay-game", help="replay one game with a move log")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p1", required=True, help="strategy id in seat 1")
    p.add_argument("--p2", required=True, help="strategy id in seat 2")
    p.add_argument("--threshold", type=int, default=3)
    p.add_argument("--turn-cap", type=int, default=200)

    p = sub.add_parser("inspect-hand", help="MinScore, MinDist and best arrangement of 13 cards")
    p.add_argument("cards", nargs="+", help="13 card codes, e.g. 2H 3H 4H ... (JK for a joker)")
    p.add_argument("--wcj", default="none", help="wildcard rank (A,2..10,J,Q,K) or 'none'")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    keys = (
        "master_seed", "output_dir", "scale", "games_per_pair", "strategies", "systems", "k", "k_schedule",
        "k_mode", "alpha", "beta", "traditional_k", "threshold", "window", "burn_in", "turn_cap", "threads",
        "beta_min", "beta_max", "beta_points", "split", "split_seed",
    )
    out = {k: getattr(args, k, None) for k in keys}
    if out["k_schedule"] is not None and out["k_mode"] is None:
        out["k_mode"] = "schedule"
    return out


def _write_outputs(out: Path, cfg: RunConfig, schedule, records, trajectories, summaries, audit) -> None:
    out.mkdir(parents=True, exist_ok=True)
    if records is not None:
        write_records(out / "records.csv", schedule, records)
    for system, traj in trajectories.items():
        write_trajectory(out / f"trajectory_{system}.csv", traj, cfg.strategies, cfg.window)
        write_summary(out / f"summary_{system}.csv", summaries[system])
    if audit:
        write_audit(out / f"audit_{CUSTOM}.csv", audit)
    (out / "config.txt").write_text(cfg.to_text(), encoding="utf-8")


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, _overrides(args))
    print("# effective configuration")
    print(cfg.to_text(), end="")
    progress = None if args.quiet else (lambda done, total: print(f"# {done}/{total} games", file=sys.stderr))
    res = run(cfg.schedule_config(), progress)
    _write_outputs(Path(cfg.output_dir), cfg, res.schedule, res.records, res.trajectories, res.summaries, res.audit)
    draws = sum(1 for r in res.records if not r.decided)
    print(f"# distinct games {len(res.records)}, strategy participations {res.participations}, draws {draws}")
    for system, rows in res.summaries.items():
        print()
        print(format_summary(system, rows))
    return EXIT_OK


def _load_records(path: str):
    try:
        records = read_records(Path(path))
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read records {path}: {exc}") from None
    if not records:
        raise ConfigError(f"no records in {path}")
    return records


def cmd_stats(args: argparse.Namespace) -> int:
    records = _load_records(args.records)
    seen = []
    for r in records:
        for s in (r.seat1, r.seat2):
            if s not in seen:
                seen.append(s)
    order = [s for s in STRATEGY_IDS if s in seen] + [s for s in seen if s not in STRATEGY_IDS]
    overrides = _overrides(args)
    overrides["strategies"] = tuple(order)
    cfg = load_config(args.config, overrides)
    schedule = [ScheduledGame(i, r.seat1, r.seat2, r.seed) for i, r in enumerate(records)]
    trajectories, audit = rate(schedule, records, cfg.schedule_config())
    summaries = {s: summarize_all(t, cfg.strategies, cfg.burn_in) for s, t in trajectories.items()}
    if args.output_dir:
        _write_outputs(Path(cfg.output_dir), cfg, schedule, None, trajectories, summaries, audit)
    for system, rows in summaries.items():
        print(format_summary(system, rows))
        print()
    return EXIT_OK


def cmd_tune(args: argparse.Namespace) -> int:
    records = _load_records(args.records)
    cfg = load_config(args.config, _overrides(args))
    if cfg.beta_points == 1:
        grid = [cfg.beta_min]
    else:
        grid = default_grid(cfg.beta_min, cfg.beta_max, cfg.beta_points)
    result = tune(TuneConfig(records, grid, cfg.alpha, cfg.k, cfg.split, cfg.split_seed))
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "f1_curve.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("beta,f1\n")
        for b, f in zip(result.betas, result.f1s):
            fh.write(f"{b!r},{'' if f is None else repr(f)}\n")
    (out / "best_beta.txt").write_text(f"{result.best_beta!r}\n", encoding="utf-8")
    print(f"best beta {result.best_beta!r} F1 {result.best_f1:.4f}")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    s1 = make_strategy(args.p1, args.threshold)
    s2 = make_strategy(args.p2, args.threshold)
    rec = play_game(s1, s2, args.seed, turn_cap=args.turn_cap, log=print, check=True)
    print(
        f"record seat1={rec.seat1} seat2={rec.seat2} h1={rec.h1} h2={rec.h2} a1={rec.a1} a2={rec.a2} "
        f"w1={rec.w1} w2={rec.w2} turns={rec.turns} termination={rec.termination} seed={rec.seed}"
    )
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    tokens = [t for chunk in args.cards for t in chunk.replace(",", " ").split()]
    hand = parse_hand(tokens)
    for card, n in Counter(hand).items():
        if n > (2 if card == JOKER else 1):
            raise UsageError(f"{card_str(card)} appears {n} times; the pack has {2 if card == JOKER else 1}")
    wcj = None if args.wcj.lower() == "none" else parse_rank(args.wcj)
    metrics = evaluate(hand, wcj)
    best = arrange(hand, wcj)
    status = "declarable" if metrics.declarable else "not declarable"
    print(f"hand {hand_str(hand)}  wildcard {rank_str(wcj)}")
    print(f"MinScore {metrics.min_score}, MinDist {metrics.min_dist}, {status}")
    for meld in best.melds:
        print(f"  {meld.kind:<7} {' '.join(card_str(c) for c in meld.cards)}")
    if best.deadwood:
        print(f"  deadwood {' '.join(card_str(c) for c in best.deadwood)}")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "tune": cmd_tune,
    "stats": cmd_stats,
    "replay-game": cmd_replay,
    "inspect-hand": cmd_inspect,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UnknownStrategy, CardParseError, HandSizeError, UsageError) as exc:
        print(f"rummyelo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, HarnessError, DegenerateFit, OSError) as exc:
        print(f"rummyelo: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ProtocolViolation as exc:
        print(f"rummyelo: protocol violation: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
