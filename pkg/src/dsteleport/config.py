"""Line-oriented key=value configuration with bracketed section headers.

Unknown sections and unknown keys are hard errors: a typo in a physics
parameter must never silently fall back to a default.  Grids are written
either as comma-separated values or as ``lo:hi:count`` (inclusive, evenly
spaced) and must be strictly increasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import ConfigError


@dataclass(frozen=True)
class SweepBlock:
    """Free-mode sweep parameters (used by the fig2 and sweep commands)."""

    k: float = 1.0
    h_over_k: tuple = tuple(0.01 + i * (5.0 - 0.01) / 59 for i in range(60))
    alphas: tuple = (float("-inf"), -5.0, -4.0, -1.0)
    tolerance: float = 1e-12
    n_max: int | None = None


@dataclass(frozen=True)
class CavityBlock:
    """Cavity-scheme parameters (used by the cavity command)."""

    z1: float = 0.0
    length: float = 1.0
    mode_index: int = 1
    alpha: float = -4.0
    norm_a: float = 1.0
    norm_b: float = 1.0
    omega: float = 3.0
    coupling: float = 0.01
    width: float = 0.2
    eta_a: float = -2.0
    eta_b: float | None = None
    width_b: float | None = None
    h_grid: tuple = tuple(0.05 + i * 0.05 for i in range(9))
    bloch_samples: int = 200


@dataclass(frozen=True)
class VerifyBlock:
    """Grids and sample counts for the verification suite."""

    tolerance: float = 1e-12
    oracle_tolerance: float = 1e-8
    k_over_h: tuple = (0.3, 0.5, 1.0, 2.0, 5.0)
    alphas: tuple = (float("-inf"), -5.0, -4.0, -1.0)
    bloch_samples: int = 10
    spread_samples: int = 50
    chart_points: int = 10000


@dataclass(frozen=True)
class Config:
    sweep: SweepBlock = SweepBlock()
    cavity: CavityBlock = CavityBlock()
    verify: VerifyBlock = VerifyBlock()


def _parse_float(raw: str, key: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as a number") from None
    if math.isnan(value):
        raise ConfigError(f"{key}: NaN is not a valid value")
    return value


def _parse_int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as an integer") from None


def _parse_grid(raw: str, key: str) -> tuple:
    """Comma list or lo:hi:count; result must be strictly increasing."""
    raw = raw.strip()
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{key}: range must be lo:hi:count, got {raw!r}")
        lo = _parse_float(parts[0], key)
        hi = _parse_float(parts[1], key)
        count = _parse_int(parts[2], key)
        if count < 1:
            raise ConfigError(f"{key}: count must be positive, got {count}")
        if count == 1:
            values = (lo,)
        else:
            step = (hi - lo) / (count - 1)
            values = tuple(lo + i * step for i in range(count))
    else:
        values = tuple(_parse_float(v, key) for v in raw.split(",") if v.strip())
    if not values:
        raise ConfigError(f"{key}: grid is empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError(f"{key}: grid must be strictly increasing")
    return values


def _validate(cfg: Config) -> Config:
    s, c, v = cfg.sweep, cfg.cavity, cfg.verify
    if not (s.k > 0.0):
        raise ConfigError(f"sweep.k must be positive, got {s.k}")
    if any(h <= 0.0 for h in s.h_over_k):
        raise ConfigError("sweep.h_over_k values must be positive")
    if not (0.0 < s.tolerance < 1.0):
        raise ConfigError(f"sweep.tolerance must be in (0, 1), got {s.tolerance}")
    if s.n_max is not None and s.n_max < 1:
        raise ConfigError(f"sweep.n_max must be >= 1, got {s.n_max}")
    for name, alphas in (("sweep.alpha", s.alphas), ("verify.alpha", v.alphas)):
        if any(a >= 0.0 for a in alphas):
            raise ConfigError(f"{name} values must be negative")
    if not (c.length > 0.0):
        raise ConfigError(f"cavity.length must be positive, got {c.length}")
    if c.mode_index < 1:
        raise ConfigError(f"cavity.mode_index must be >= 1, got {c.mode_index}")
    if c.alpha >= 0.0:
        raise ConfigError(f"cavity.alpha must be negative, got {c.alpha}")
    if not (c.width > 0.0):
        raise ConfigError(f"cavity.width must be positive, got {c.width}")
    if c.width_b is not None and not (c.width_b > 0.0):
        raise ConfigError(f"cavity.width_b must be positive, got {c.width_b}")
    if any(h <= 0.0 for h in c.h_grid):
        raise ConfigError("cavity.h_grid values must be positive")
    if c.bloch_samples < 1:
        raise ConfigError(f"cavity.bloch_samples must be >= 1, got {c.bloch_samples}")
    if not (0.0 < v.tolerance < 1.0):
        raise ConfigError(f"verify.tolerance must be in (0, 1), got {v.tolerance}")
    if v.oracle_tolerance < 0.0:
        raise ConfigError(f"verify.oracle_tolerance must be >= 0, got {v.oracle_tolerance}")
    if any(x <= 0.0 for x in v.k_over_h):
        raise ConfigError("verify.k_over_h values must be positive")
    for name, count in (
        ("verify.bloch_samples", v.bloch_samples),
        ("verify.spread_samples", v.spread_samples),
        ("verify.chart_points", v.chart_points),
    ):
        if count < 1:
            raise ConfigError(f"{name} must be >= 1, got {count}")
    return cfg


_SWEEP_KEYS = {
    "k": ("k", _parse_float),
    "h_over_k": ("h_over_k", _parse_grid),
    "alpha": ("alphas", _parse_grid),
    "tolerance": ("tolerance", _parse_float),
    "n_max": ("n_max", _parse_int),
}

_CAVITY_KEYS = {
    "z1": ("z1", _parse_float),
    "length": ("length", _parse_float),
    "mode_index": ("mode_index", _parse_int),
    "alpha": ("alpha", _parse_float),
    "norm_a": ("norm_a", _parse_float),
    "norm_b": ("norm_b", _parse_float),
    "omega": ("omega", _parse_float),
    "coupling": ("coupling", _parse_float),
    "width": ("width", _parse_float),
    "eta_a": ("eta_a", _parse_float),
    "eta_b": ("eta_b", _parse_float),
    "width_b": ("width_b", _parse_float),
    "h_grid": ("h_grid", _parse_grid),
    "bloch_samples": ("bloch_samples", _parse_int),
}

_VERIFY_KEYS = {
    "tolerance": ("tolerance", _parse_float),
    "oracle_tolerance": ("oracle_tolerance", _parse_float),
    "k_over_h": ("k_over_h", _parse_grid),
    "alpha": ("alphas", _parse_grid),
    "bloch_samples": ("bloch_samples", _parse_int),
    "spread_samples": ("spread_samples", _parse_int),
    "chart_points": ("chart_points", _parse_int),
}

_SECTIONS = {"sweep": _SWEEP_KEYS, "cavity": _CAVITY_KEYS, "verify": _VERIFY_KEYS}


def parse_config(text: str) -> Config:
    """Parse configuration text; raises :class:`ConfigError` on any problem."""
    overrides: dict[str, dict] = {name: {} for name in _SECTIONS}
    section: str | None = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw_line!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, raw_value = (part.strip() for part in line.split("=", 1))
        keymap = _SECTIONS[section]
        if key not in keymap:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in [{section}]")
        field_name, parser = keymap[key]
        if field_name in overrides[section]:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in [{section}]")
        overrides[section][field_name] = parser(raw_value, f"[{section}] {key}")
    cfg = Config(
        sweep=replace(SweepBlock(), **overrides["sweep"]),
        cavity=replace(CavityBlock(), **overrides["cavity"]),
        verify=replace(VerifyBlock(), **overrides["verify"]),
    )
    return _validate(cfg)


def load_config(path: str | None) -> Config:
    """Read a config file, or return the built-in defaults when ``path`` is None."""
    if path is None:
        return _validate(Config())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)


def default_config_text() -> str:
    """Render the built-in defaults in the accepted file format."""
    cfg = Config()
    lines = []
    for section, block in (("sweep", cfg.sweep), ("cavity", cfg.cavity), ("verify", cfg.verify)):
        lines.append(f"[{section}]")
        keymap = _SECTIONS[section]
        by_field = {field_name: key for key, (field_name, _) in keymap.items()}
        for f in fields(block):
            value = getattr(block, f.name)
            if value is None:
                continue
            if isinstance(value, tuple):
                rendered = ", ".join(f"{v:.17g}" for v in value)
            else:
                rendered = f"{value:.17g}" if isinstance(value, float) else str(value)
            lines.append(f"{by_field[f.name]} = {rendered}")
        lines.append("")
    return "\n".join(lines)
