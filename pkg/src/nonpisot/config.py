"""Run configuration: defaults, a flat key = value file, command-line flags.

Precedence is flags > file > defaults.  File format, one setting per line:

    # comment
    level = 8
    weights = balanced
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

COMMANDS = ("gen", "corr", "algebra", "lyapunov", "torusmean", "diffraction", "verify-all")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None
    fmt: str = "csv"
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def as_dict(self) -> dict:
        return {"command": self.command, "params": dict(self.params), "seed": self.seed,
                "out": self.out, "format": self.fmt, "threads": self.threads}


def read_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def merge(flags: dict, file_values: dict, defaults: dict, types: dict) -> dict:
    """flags > file > defaults; values from the file are converted with `types`."""
    out = {}
    for key, default in defaults.items():
        if flags.get(key) is not None:
            out[key] = flags[key]
        elif key in file_values:
            conv = types.get(key, str)
            try:
                out[key] = conv(file_values[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key}: {file_values[key]!r} ({exc})") from exc
        else:
            out[key] = default
    unknown = set(file_values) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return out
