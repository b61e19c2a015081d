"""Run configuration: defaults, flat key=value config files, command-line overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .fock import Sector, sector_from_name
from .operators import ALGEBRA_CONVENTION, DEFAULT_CONVENTION, NormalOrderConvention

CONFIG_ENV = "ETAXI_CONFIG"

# suites that drop the zero-mode pair under zero_mode=auto; all others keep it bare
JORDAN_SUITES = ("jordan",)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    sector: str = "NS"
    level: Fraction = Fraction(8)
    max_index: int = 3
    ring: str = "laurent"
    lam: Fraction = Fraction(1)
    zero_mode: str = "auto"
    delta_T: Fraction = Fraction(-1)
    hbar_order: int = 4
    vars: int = 2
    L: int = 4
    t: Fraction = Fraction(2)
    k: int = 2
    v_sign: str = "stated"
    normalize: bool = False
    regularize: bool = False
    format: str = "json"
    out: str | None = None

    def sector_obj(self) -> Sector:
        return sector_from_name(self.sector)

    def convention(self, suite: str | None = None) -> NormalOrderConvention:
        if self.zero_mode == "auto":
            base = DEFAULT_CONVENTION if suite in JORDAN_SUITES else ALGEBRA_CONVENTION
            return NormalOrderConvention(self.lam, base.zero_mode)
        return NormalOrderConvention(self.lam, self.zero_mode)

    def validate(self) -> RunConfig:
        self.sector_obj()
        if self.level < 0:
            raise ConfigError("level must be non-negative")
        if self.max_index < 0:
            raise ConfigError("max-index must be non-negative")
        if self.ring not in ("laurent", "rational", "hbar"):
            raise ConfigError(f"unknown ring {self.ring!r}")
        if self.zero_mode not in ("auto", "lambda", "omit", "bare"):
            raise ConfigError(f"unknown zero-mode reading {self.zero_mode!r}")
        if self.lam not in (0, Fraction(1, 2), 1):
            raise ConfigError("lambda must be 0, 1/2 or 1")
        if self.hbar_order < 0 or self.vars < 1 or self.L < 0 or self.k < 0:
            raise ConfigError("orders and counts must be non-negative (vars >= 1)")
        if self.v_sign not in ("stated", "realized"):
            raise ConfigError("v-sign must be 'stated' or 'realized'")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        return self


def _as_bool(s) -> bool:
    return s if isinstance(s, bool) else str(s).strip().lower() in ("1", "true", "yes", "on")


# field annotations are strings under postponed evaluation
_CASTS = {"Fraction": Fraction, "int": int, "bool": _as_bool}


def _cast(name: str, value):
    for f in fields(RunConfig):
        if f.name == name:
            cast = _CASTS.get(f.type)
            if cast is None:
                return None if value in (None, "", "none") else str(value)
            try:
                return cast(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"bad value {value!r} for {name}") from exc
    raise ConfigError(f"unknown config key {name!r}")


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "lambda":
            key = "lam"
        out[key] = _cast(key, value)
    return out


def load_config(path: str | os.PathLike | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then the config file (explicit path or $ETAXI_CONFIG), then overrides."""
    cfg = RunConfig()
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file {p} not found")
        cfg = replace(cfg, **parse_config_text(p.read_text()))
    if overrides:
        cfg = replace(cfg, **{k: _cast(k, v) for k, v in overrides.items() if v is not None})
    return cfg.validate()
