"""Application configuration: TOML-style key/value files with flag overrides."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import DysscreenError
from .wordgen import DifficultySet, default_difficulty


@dataclass(frozen=True)
class AppConfig:
    corpus_dir: str | None = None
    bank_path: str | None = None
    dyslexia_model_path: str | None = None
    dysgraphia_model_path: str | None = None
    difficulty_letters: str = "bdpq"
    difficulty_combinations: str = "ie,ei,ou,gh,th"
    default_seed: int = 0
    port: int = 8000
    data_dir: str = "data"
    ui_dir: str | None = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise DysscreenError(f"port must be in [1, 65535], got {self.port}")

    def difficulty_set(self) -> DifficultySet:
        if not self.difficulty_letters and not self.difficulty_combinations:
            return default_difficulty()
        letters = frozenset(self.difficulty_letters)
        combos = frozenset(c for c in self.difficulty_combinations.split(",") if c)
        return DifficultySet(letters, combos)


def _parse_value(raw: str):
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        return raw[1:-1]
    if raw.lower() in ("true", "false"):
        return raw.lower() == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


def load_config(path) -> AppConfig:
    """Parse a flat ``key = value`` config file (comments start with #)."""
    known = {f.name for f in fields(AppConfig)}
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DysscreenError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in known:
            raise DysscreenError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _parse_value(raw)
    return AppConfig(**values)


def apply_overrides(config: AppConfig, **overrides) -> AppConfig:
    """Return a copy with every non-None override applied (flags win)."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    return replace(config, **changes) if changes else config
