"""Run configuration: a flat JSON object keyed after the physical symbols.

Physical quantities are given as ordinary frequencies (omega / 2*pi, Hz)
under ``<symbol>_over_2pi_hz`` keys and converted to rad/s only when the
validated :class:`SystemParams` is built.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

import numpy as np

from .core.errors import ConfigError
from .core.model import validate
from .core.types import ParameterInput, SystemParams

logger = logging.getLogger(__name__)

HZ_SUFFIX = "_over_2pi_hz"

_REQUIRED_PARAMS = (
    "omega_d",
    "omega_m",
    "gamma_m",
    "g",
    "J",
    "Delta1",
    "Delta2",
    "kappa1_e",
    "kappa2_e",
)
_OPTIONAL_PARAMS = ("kappa1_o", "kappa1", "kappa2_o", "kappa2", "gain", "kappa_eff")

# Setting one member of a pair through an override clears the other.
_ALTERNATIVES = {
    "kappa1_o": "kappa1",
    "kappa1": "kappa1_o",
    "kappa2_o": "kappa2",
    "kappa2": "kappa2_o",
    "gain": "kappa_eff",
    "kappa_eff": "gain",
}

FORMATS = ("csv", "json")
SPACINGS = ("log", "lin")


@dataclass(frozen=True)
class FrequencyParams:
    """Parameter set in user units (Hz, meaning omega / 2*pi)."""

    omega_d: float
    omega_m: float
    gamma_m: float
    g: float
    J: float
    Delta1: float
    Delta2: float
    kappa1_e: float
    kappa2_e: float
    kappa1_o: Optional[float] = None
    kappa1: Optional[float] = None
    kappa2_o: Optional[float] = None
    kappa2: Optional[float] = None
    gain: Optional[float] = None
    kappa_eff: Optional[float] = None

    def to_input(self) -> ParameterInput:
        return ParameterInput.from_frequencies(**dataclasses.asdict(self))

    def system(self) -> SystemParams:
        return validate(self.to_input())


@dataclass(frozen=True)
class SweepConfig:
    p_min_w: float = 1.0e-7
    p_max_w: float = 1.0e-1
    points: int = 2401
    spacing: str = "log"

    def powers(self) -> np.ndarray:
        if self.spacing == "log":
            return np.logspace(np.log10(self.p_min_w), np.log10(self.p_max_w), self.points)
        return np.linspace(self.p_min_w, self.p_max_w, self.points)


@dataclass(frozen=True)
class NoiseConfig:
    n_m: float = 100.0
    delta_omega_over_2pi_hz: float = 30.0
    n_points: int = 21
    power_samples: int = 50


@dataclass(frozen=True)
class OutputConfig:
    path: Optional[str] = None
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    params: FrequencyParams
    sweep: SweepConfig = field(default_factory=SweepConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    max_workers: Optional[int] = None

    def system_params(self) -> SystemParams:
        return self.params.system()


# flat key -> (section, attribute, type)
_RUN_KEYS: dict[str, tuple[str, str, type]] = {
    "p_min_w": ("sweep", "p_min_w", float),
    "p_max_w": ("sweep", "p_max_w", float),
    "points": ("sweep", "points", int),
    "spacing": ("sweep", "spacing", str),
    "n_m": ("noise", "n_m", float),
    "delta_omega_over_2pi_hz": ("noise", "delta_omega_over_2pi_hz", float),
    "noise_points": ("noise", "n_points", int),
    "power_samples": ("noise", "power_samples", int),
    "out": ("output", "path", str),
    "format": ("output", "format", str),
    "max_workers": ("run", "max_workers", int),
}

PARAM_KEYS = tuple(f"{name}{HZ_SUFFIX}" for name in _REQUIRED_PARAMS + _OPTIONAL_PARAMS)
KNOWN_KEYS = frozenset(PARAM_KEYS) | frozenset(_RUN_KEYS)


def _coerce(key: str, value: Any, kind: type) -> Any:
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", field=key)
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", field=key)
    if kind is int:
        if float(value) != int(value):
            raise ConfigError(f"expected an integer, got {value!r}", field=key)
        return int(value)
    return float(value)


def config_from_mapping(mapping: Mapping[str, Any]) -> RunConfig:
    unknown = sorted(set(mapping) - KNOWN_KEYS)
    if unknown:
        raise ConfigError("unknown configuration key", field=unknown[0])

    params: dict[str, Optional[float]] = {}
    for name in _REQUIRED_PARAMS:
        key = f"{name}{HZ_SUFFIX}"
        if key not in mapping:
            raise ConfigError("missing required parameter", field=key)
        params[name] = _coerce(key, mapping[key], float)
    for name in _OPTIONAL_PARAMS:
        key = f"{name}{HZ_SUFFIX}"
        if mapping.get(key) is not None:
            params[name] = _coerce(key, mapping[key], float)

    sections: dict[str, dict[str, Any]] = {"sweep": {}, "noise": {}, "output": {}, "run": {}}
    for key, (section, attr, kind) in _RUN_KEYS.items():
        if mapping.get(key) is not None:
            sections[section][attr] = _coerce(key, mapping[key], kind)

    cfg = RunConfig(
        params=FrequencyParams(**params),
        sweep=SweepConfig(**sections["sweep"]),
        noise=NoiseConfig(**sections["noise"]),
        output=OutputConfig(**sections["output"]),
        max_workers=sections["run"].get("max_workers"),
    )
    check_run_config(cfg)
    return cfg


def check_run_config(cfg: RunConfig) -> None:
    sweep = cfg.sweep
    if sweep.points < 2:
        raise ConfigError("must be >= 2", field="points")
    if sweep.spacing not in SPACINGS:
        raise ConfigError(f"must be one of {', '.join(SPACINGS)}", field="spacing")
    if sweep.p_min_w < 0:
        raise ConfigError("must be >= 0", field="p_min_w")
    if sweep.p_min_w > sweep.p_max_w:
        raise ConfigError("p_min_w must not exceed p_max_w", field="p_min_w")
    if sweep.spacing == "log" and sweep.p_min_w <= 0:
        raise ConfigError("log spacing needs p_min_w > 0", field="p_min_w")
    if cfg.output.format not in FORMATS:
        raise ConfigError(f"must be one of {', '.join(FORMATS)}", field="format")
    if cfg.noise.n_m < 0:
        raise ConfigError("must be >= 0", field="n_m")
    if cfg.noise.delta_omega_over_2pi_hz < 0:
        raise ConfigError("must be >= 0", field="delta_omega_over_2pi_hz")
    if cfg.noise.n_points < 2:
        raise ConfigError("must be >= 2", field="noise_points")
    if cfg.noise.power_samples < 1:
        raise ConfigError("must be >= 1", field="power_samples")


def config_to_mapping(cfg: RunConfig) -> dict[str, Any]:
    mapping: dict[str, Any] = {}
    for name, value in dataclasses.asdict(cfg.params).items():
        if value is not None:
            mapping[f"{name}{HZ_SUFFIX}"] = value
    owners = {"sweep": cfg.sweep, "noise": cfg.noise, "output": cfg.output, "run": cfg}
    for key, (section, attr, _kind) in _RUN_KEYS.items():
        value = getattr(owners[section], attr)
        if value is not None:
            mapping[key] = value
    return mapping


def dump_config(cfg: RunConfig) -> str:
    return json.dumps(config_to_mapping(cfg), indent=2, sort_keys=True) + "\n"


def parse_override(text: str) -> tuple[str, Any]:
    """Split ``key=value``; the value is read as a JSON scalar, else kept as a string."""
    key, sep, raw = text.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"override {text!r} is not of the form key=value", field="override")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw.strip()
    if isinstance(value, (list, dict)):
        raise ConfigError("override values must be scalars", field=key)
    return key, value


def apply_overrides(mapping: Mapping[str, Any], overrides: Iterable[str]) -> dict[str, Any]:
    """Patch *mapping*; a ``null`` value removes the key."""
    merged = dict(mapping)
    for text in overrides:
        key, value = parse_override(text)
        if key not in KNOWN_KEYS:
            raise ConfigError("unknown configuration key", field=key)
        if value is None:
            merged.pop(key, None)
            continue
        if key.endswith(HZ_SUFFIX):
            partner = _ALTERNATIVES.get(key[: -len(HZ_SUFFIX)])
            if partner is not None:
                merged.pop(f"{partner}{HZ_SUFFIX}", None)
        merged[key] = value
        logger.debug("override %s=%r", key, value)
    return merged


def parse_config_text(text: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON (column {exc.colno}): {exc.msg}", line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object", line=1)
    return data


def load_config(path: str | Path, overrides: Iterable[str] = ()) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return config_from_mapping(apply_overrides(parse_config_text(text), overrides))


def with_overrides(cfg: RunConfig, overrides: Iterable[str]) -> RunConfig:
    overrides = list(overrides)
    if not overrides:
        return cfg
    return config_from_mapping(apply_overrides(config_to_mapping(cfg), overrides))
