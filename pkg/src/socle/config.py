"""Service configuration: one JSON file plus SOC_* environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

DEFAULT_SHARE_BASE = "https://www.reddit.com/submit"


class ConfigError(Exception):
    pass


@dataclass
class ServiceConfig:
    addr: str = "127.0.0.1:8080"
    store: str = "./data"
    draft_threshold: int = 3
    share_base: str = DEFAULT_SHARE_BASE
    public_base: Optional[str] = None
    session_ttl_days: int = 14
    ui_dir: Optional[str] = None

    @property
    def host(self) -> str:
        return self.addr.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        try:
            return int(self.addr.rsplit(":", 1)[1])
        except (IndexError, ValueError):
            raise ConfigError(f"addr {self.addr!r} is not host:port") from None

    @property
    def resolved_public_base(self) -> str:
        return (self.public_base or f"http://{self.addr}").rstrip("/")


_ENV_KEYS = {
    "SOC_ADDR": ("addr", str),
    "SOC_STORE": ("store", str),
    "SOC_DRAFT_THRESHOLD": ("draft_threshold", int),
    "SOC_SHARE_BASE": ("share_base", str),
    "SOC_PUBLIC_BASE": ("public_base", str),
    "SOC_SESSION_TTL_DAYS": ("session_ttl_days", int),
    "SOC_UI_DIR": ("ui_dir", str),
}

_FILE_KEYS = {
    "addr": str,
    "store": str,
    "draft_threshold": int,
    "share_base": str,
    "public_base": str,
    "session_ttl_days": int,
    "ui_dir": str,
}


def load_config(path: str | os.PathLike | None = None, env: dict | None = None) -> ServiceConfig:
    """Load configuration, applying environment overrides on top of the file."""
    config = ServiceConfig()
    if path is not None:
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a JSON object")
        for key, value in data.items():
            expected = _FILE_KEYS.get(key)
            if expected is None:
                raise ConfigError(f"config {path}: unknown key {key!r}")
            if not isinstance(value, expected):
                raise ConfigError(
                    f"config {path}: key {key!r} must be {expected.__name__}"
                )
            setattr(config, key, value)

    env = os.environ if env is None else env
    for env_key, (attr, cast) in _ENV_KEYS.items():
        raw_value = env.get(env_key)
        if raw_value is None:
            continue
        try:
            setattr(config, attr, cast(raw_value))
        except ValueError:
            raise ConfigError(f"{env_key}={raw_value!r} is not a valid {cast.__name__}") from None

    config.port  # validates addr early
    return config
