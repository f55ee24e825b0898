"""Run configuration for ``verify`` and ``sweep``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError, FpError
from ..field import is_prime
from .setspec import FamilySpec, parse_family

_FIELDS = {"primes", "families", "trials", "seed", "flags"}
_FLAGS = {"determinism", "strategy"}


@dataclass(frozen=True)
class Flags:
    determinism: bool = True
    strategy: str = "fast"


@dataclass(frozen=True)
class RunConfig:
    primes: tuple[int, ...]
    families: tuple[FamilySpec, ...]
    trials: int = 1
    seed: int = 0
    flags: Flags = field(default_factory=Flags)

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "families": [f.text for f in self.families],
            "trials": self.trials,
            "seed": self.seed,
            "flags": {"determinism": self.flags.determinism, "strategy": self.flags.strategy},
        }


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    primes = data.get("primes")
    if not isinstance(primes, list) or not primes:
        raise ConfigError("primes must be a non-empty list")
    for p in primes:
        if not isinstance(p, int) or p < 3 or not is_prime(p):
            raise ConfigError(f"{p!r} is not an odd prime")
    fams = data.get("families")
    if not isinstance(fams, list) or not fams:
        raise ConfigError("families must be a non-empty list of set specs")
    try:
        families = tuple(parse_family(f) for f in fams)
    except (FpError, TypeError) as exc:
        raise ConfigError(f"bad family: {exc}") from exc
    trials = data.get("trials", 1)
    if not isinstance(trials, int) or trials < 1:
        raise ConfigError("trials must be a positive integer")
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError("seed must be a nonnegative integer")
    raw_flags = data.get("flags", {})
    if not isinstance(raw_flags, dict) or set(raw_flags) - _FLAGS:
        raise ConfigError(f"flags accepts only {sorted(_FLAGS)}")
    flags = Flags(
        determinism=bool(raw_flags.get("determinism", True)),
        strategy=raw_flags.get("strategy", "fast"),
    )
    if flags.strategy not in ("fast", "oracle"):
        raise ConfigError("flags.strategy must be 'fast' or 'oracle'")
    return RunConfig(tuple(primes), families, trials, seed, flags)


def load_config(path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(data)


DEFAULT_VERIFY = {
    "primes": [11, 31, 101],
    "families": [
        "random:6:1",
        "random:sqrt:1000",
        "interval:0..5",
        "geom:2:6",
        "recip-shift:1:0:6",
    ],
    "trials": 25,
    "seed": 1,
    "flags": {"determinism": True, "strategy": "fast"},
}

DEFAULT_SWEEP = {
    "primes": [101, 1009, 4001, 10007],
    "families": [
        "random:sqrt:1",
        "recip-shift:1:0:10",
        "recip-shift:1:0:30",
        "recip-shift:2:0:sqrt",
        "recip-shift:1:0:100",
    ],
    "trials": 3,
    "seed": 2020,
    "flags": {"determinism": True, "strategy": "fast"},
}


def default_verify_config() -> RunConfig:
    return config_from_dict(DEFAULT_VERIFY)


def default_sweep_config() -> RunConfig:
    return config_from_dict(DEFAULT_SWEEP)
