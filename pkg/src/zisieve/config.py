"""Runtime configuration and prime-table cache management.

Flags override the optional key=value config file; the environment is
consulted for the cache path only (ZISIEVE_CACHE).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

from .primes import PrimeTable, build_prime_table

ENV_CACHE = "ZISIEVE_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_CACHE)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "zisieve" / "primes.zipt"


@dataclass
class Config:
    prime_table_limit: int = 10**5 + 1
    cache_path: Path = None  # type: ignore[assignment]
    jobs: int = 1
    epsilon: float = 1.0 / 256.0
    quad_tol: float = 1e-10
    output: str = "text"

    def __post_init__(self):
        if self.cache_path is None:
            self.cache_path = default_cache_path()
        self.cache_path = Path(self.cache_path)
        self.validate()

    def validate(self) -> None:
        if not 0 < self.epsilon <= 1.0 / 200.0:
            raise ValueError("epsilon must lie in (0, 1/200]")
        if not 1e-12 <= self.quad_tol <= 1e-4:
            raise ValueError("quad_tol must lie in [1e-12, 1e-4]")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.output not in ("text", "json", "csv"):
            raise ValueError(f"unknown output format {self.output!r}")


_FIELD_TYPES = {f.name: f.type for f in fields(Config)}


def load_config_file(path: str | Path) -> dict:
    """Parse a simple key=value file; '#' starts a comment."""
    out: dict = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ValueError(f"unknown config key {key!r}")
        if key in ("prime_table_limit", "jobs"):
            out[key] = int(value)
        elif key in ("epsilon", "quad_tol"):
            out[key] = float(value)
        else:
            out[key] = value
    return out


def load_table(
    config: Config, needed_limit: int, rebuild: bool = False, exact: bool = False
) -> PrimeTable:
    """A prime table covering norms < needed_limit, via the cache file.

    Loads the cache when it is fresh enough; otherwise builds and rewrites
    it.  Builds are padded up to the configured prime_table_limit so a
    ladder of growing requests does not trigger repeated rebuilds; `exact`
    skips the padding.
    """
    target = max(int(needed_limit), 2)
    if not rebuild and config.cache_path.exists():
        try:
            table = PrimeTable.load(config.cache_path)
        except (ValueError, OSError):
            table = None
        if table is not None and table.limit >= target:
            return table
    table = build_prime_table(target if exact else max(target, config.prime_table_limit))
    try:
        table.save(config.cache_path)
    except OSError:
        pass  # cache directory not writable: stay in-memory
    return table
