"""Service configuration: file plus environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConfigError

ENV_DATA_DIR = "REMIXHUB_DATA_DIR"
ENV_PORT = "REMIXHUB_PORT"


@dataclass
class Config:
    host: str = "127.0.0.1"
    port: int = 8000
    data_dir: Path = field(default_factory=lambda: Path("data"))
    overlap_threshold: float = 0.25
    participation_window_days: int = 30
    front_page_size: int = 10
    admin_token: Optional[str] = None

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        if not 0 < self.overlap_threshold <= 1:
            raise ConfigError(f"overlap_threshold must be in (0, 1], got {self.overlap_threshold}")
        if self.participation_window_days < 1:
            raise ConfigError("participation_window_days must be at least 1")
        if self.front_page_size < 1:
            raise ConfigError("front_page_size must be at least 1")

    @property
    def server_id(self) -> str:
        return f"{self.host}:{self.port}"


_FIELDS = {
    "host": str,
    "port": int,
    "data_dir": str,
    "overlap_threshold": float,
    "participation_window_days": int,
    "front_page_size": int,
    "admin_token": str,
}


def load_config(path: Optional[Path] = None, env: Optional[dict] = None) -> Config:
    """Read a JSON config file, then apply environment overrides.

    ``REMIXHUB_DATA_DIR`` and ``REMIXHUB_PORT`` override the file values,
    so a deployment can relocate state without editing config.
    """
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in raw.items():
            if key not in _FIELDS:
                raise ConfigError(f"unknown config key {key!r}")
            caster = _FIELDS[key]
            try:
                values[key] = caster(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad config value for {key!r}: {exc}") from None
    if env.get(ENV_DATA_DIR):
        values["data_dir"] = env[ENV_DATA_DIR]
    if env.get(ENV_PORT):
        try:
            values["port"] = int(env[ENV_PORT])
        except ValueError as exc:
            raise ConfigError(f"bad {ENV_PORT}: {exc}") from None
    return Config(**values)
