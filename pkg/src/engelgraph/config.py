"""Runtime limits.  Precedence: explicit argument > ENGEL_* environment > default."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(float(raw))


@dataclass(frozen=True)
class Config:
    max_order_stored: int = 100_000
    max_order_stream: int = 21_000_000
    threads: int = 0  # 0: machine parallelism
    dense_threshold: int = 4096
    diameter_limit: int = 20_000
    memory_budget: int = 1 << 30  # bytes of cached adjacency rows
    equivariance: bool = True
    seed: int = 20240229

    @classmethod
    def from_env(cls) -> "Config":
        base = cls()
        return replace(
            base,
            max_order_stored=_env_int("ENGEL_MAX_ORDER_STORED", base.max_order_stored),
            max_order_stream=_env_int("ENGEL_MAX_ORDER_STREAM", base.max_order_stream),
            threads=_env_int("ENGEL_THREADS", base.threads),
            memory_budget=_env_int("ENGEL_MEMORY_BUDGET", base.memory_budget),
        )

    @property
    def n_threads(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


_current = Config.from_env()


def get_config() -> Config:
    return _current


def set_config(**changes) -> Config:
    global _current
    _current = replace(_current, **changes)
    return _current


def reload_config() -> Config:
    global _current
    _current = Config.from_env()
    return _current
