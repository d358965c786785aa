"""Run configuration: flat ``key = value`` files merged with command-line flags.

Blank lines and ``#`` comments are ignored. Unknown keys are an error so a
typo cannot silently fall back to a default.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Optional

from .agents import DEFAULT_THRESHOLD, STRATEGY_IDS
from .game import DEFAULT_TURN_CAP
from .harness import DEFAULT_WINDOW, DESK_GAMES, PAPER_GAMES, SYSTEMS, ScheduleConfig
from .ratings import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_K, DEFAULT_SCHEDULE, TRADITIONAL_K, RatingParams
from .tuning import DEFAULT_SPLIT

SCALES = {"desk": DESK_GAMES, "paper": PAPER_GAMES}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    master_seed: int = 0
    output_dir: str = "out"
    scale: str = "desk"
    games_per_pair: Optional[int] = None  # overrides the scale's count
    strategies: tuple[str, ...] = STRATEGY_IDS
    systems: tuple[str, ...] = SYSTEMS
    k_mode: str = "constant"  # or "schedule"
    k: float = DEFAULT_K
    k_schedule: tuple[float, float, float, int, int] = DEFAULT_SCHEDULE
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    traditional_k: float = TRADITIONAL_K
    threshold: int = DEFAULT_THRESHOLD
    window: int = DEFAULT_WINDOW
    burn_in: float = 0.0
    turn_cap: int = DEFAULT_TURN_CAP
    threads: int = 1
    beta_min: float = -0.03
    beta_max: float = 0.03
    beta_points: int = 61
    split: float = DEFAULT_SPLIT
    split_seed: int = 0

    @property
    def games(self) -> int:
        return self.games_per_pair if self.games_per_pair is not None else SCALES[self.scale]

    def rating_params(self) -> RatingParams:
        schedule = self.k_schedule if self.k_mode == "schedule" else None
        return RatingParams(k=self.k, alpha=self.alpha, beta=self.beta, schedule=schedule)

    def schedule_config(self) -> ScheduleConfig:
        return ScheduleConfig(
            strategies=self.strategies,
            games_per_directed_pair=self.games,
            master_seed=self.master_seed,
            rating_systems=self.systems,
            params=self.rating_params(),
            traditional_k=self.traditional_k,
            threshold=self.threshold,
            turn_cap=self.turn_cap,
            window=self.window,
            burn_in=self.burn_in,
            threads=self.threads,
        )

    def validate(self) -> "RunConfig":
        if self.scale not in SCALES:
            raise ConfigError(f"scale must be one of {sorted(SCALES)}")
        if self.games_per_pair is not None and self.games_per_pair < 1:
            raise ConfigError("games_per_pair must be positive")
        for s in self.strategies:
            if s not in STRATEGY_IDS:
                raise ConfigError(f"unknown strategy {s!r}")
        if len(set(self.strategies)) != len(self.strategies) or len(self.strategies) < 2:
            raise ConfigError("strategies must be at least two distinct ids")
        for s in self.systems:
            if s not in SYSTEMS:
                raise ConfigError(f"unknown rating system {s!r}")
        if self.k_mode not in ("constant", "schedule"):
            raise ConfigError("k_mode must be 'constant' or 'schedule'")
        try:
            self.rating_params().validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.window < 1:
            raise ConfigError("window must be at least 1")
        if not 0 <= self.burn_in < 1:
            raise ConfigError("burn_in must be in [0, 1)")
        if self.turn_cap < 1 or self.threads < 1 or self.threshold < 0:
            raise ConfigError("turn_cap and threads must be positive, threshold non-negative")
        if self.beta_points < 1 or (self.beta_points > 1 and self.beta_max <= self.beta_min):
            raise ConfigError("beta grid needs beta_max > beta_min and at least one point")
        if not 0 < self.split < 1:
            raise ConfigError("split must be in (0, 1)")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        return self

    def to_text(self) -> str:
        return "".join(f"{f.name} = {_format(getattr(self, f.name))}\n" for f in fields(self))


def _format(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, tuple):
        return ",".join(_format(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


_FIELDS = {f.name: f for f in fields(RunConfig)}


def _parse_value(key: str, raw: str) -> Any:
    raw = raw.strip()
    default = getattr(RunConfig(), key)
    try:
        if key == "games_per_pair":
            return None if raw.lower() == "none" else int(raw)
        if key == "k_schedule":
            parts = [p.strip() for p in raw.split(",")]
            if len(parts) != 5:
                raise ValueError("k_schedule needs k1,k2,k3,p,q")
            return (float(parts[0]), float(parts[1]), float(parts[2]), int(parts[3]), int(parts[4]))
        if isinstance(default, tuple):
            return tuple(p.strip() for p in raw.split(",") if p.strip())
        if isinstance(default, bool):
            return raw.lower() in ("1", "true", "yes")
        if isinstance(default, int):
            return int(raw, 0)
        if isinstance(default, float):
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None


def parse_config_text(text: str, base: Optional[RunConfig] = None) -> RunConfig:
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    return replace(base or RunConfig(), **values)


def load_config(path: Optional[str | Path], overrides: dict[str, Any]) -> RunConfig:
    """File values over defaults, then non-None ``overrides`` over both."""
    cfg = RunConfig()
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        cfg = parse_config_text(text, cfg)
    flags = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **flags).validate()
