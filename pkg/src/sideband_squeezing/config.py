"""Run configuration: flat ``key = value`` files and the figure presets.

Frequencies in files are ordinary frequencies (keys ending in ``_hz``) and
are multiplied by 2*pi on load; angles are in radians.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError, ParameterError, RegimeWarning
from .params import SystemParams, validate
from .scattering import DEFAULT_ALPHA

TWO_PI = 2 * math.pi

# file key -> (SystemParams field, scale)
KEYS = {
    "gamma_hz": ("gamma", TWO_PI),
    "nu_hz": ("nu", TWO_PI),
    "eta": ("eta", 1.0),
    "omega_rabi_hz": ("omega_rabi", TWO_PI),
    "delta_hz": ("delta", TWO_PI),
    "g1_hz": ("g1", TWO_PI),
    "g2_hz": ("g2", TWO_PI),
    "phi1_rad": ("phi1", 1.0),
    "phi2_rad": ("phi2", 1.0),
    "theta_l_rad": ("theta_L", 1.0),
    "theta_c_rad": ("theta_c", 1.0),
    "kappa1_hz": ("kappa1", TWO_PI),
    "kappa2_hz": ("kappa2", TWO_PI),
    "kappa_b_hz": ("kappa_b", TWO_PI),
    "nbar": ("nbar", 1.0),
    "alpha": (None, 1.0),
}

# Indium-ion intercombination line in a 3 MHz trap, laser 60 MHz red of the line
REFERENCE_VALUES = {
    "gamma_hz": 360e3,
    "nu_hz": 3e6,
    "eta": 0.1,
    "omega_rabi_hz": 18e6,
    "delta_hz": -60e6,
    "g1_hz": 0.6e6,
    "g2_hz": 0.6e6,
    "phi1_rad": 0.0,
    "phi2_rad": 0.0,
    "theta_l_rad": 0.0,
    "theta_c_rad": math.pi / 2,
    "kappa_b_hz": 0.0,
    "nbar": 0.0,
    "alpha": DEFAULT_ALPHA,
}

PRESETS = {
    "fig2": {**REFERENCE_VALUES, "kappa1_hz": 1e3, "kappa2_hz": 1e3},
    "fig3": {**REFERENCE_VALUES, "kappa1_hz": 10e3, "kappa2_hz": 10e3},
    "fig4": {**REFERENCE_VALUES, "kappa1_hz": 100e3, "kappa2_hz": 100e3},
}

# trap heating kappa_b * nbar = 2 pi x 0.1 kHz, split as a weak coupling to a hot bath
HEATING = {"kappa_b_hz": 1.0, "nbar": 100.0}


@dataclass(frozen=True)
class Sweep:
    """Angular-frequency grid; open bounds default to +-2 Theta once Theta is known."""

    omega_min: float | None = None
    omega_max: float | None = None
    points: int = 2001

    def __post_init__(self):
        if self.points < 2:
            raise ConfigError(f"sweep needs at least 2 points, got {self.points}")
        if (self.omega_min is None) != (self.omega_max is None):
            raise ConfigError("omega_min and omega_max must be given together")
        if self.omega_min is not None and not self.omega_min < self.omega_max:
            raise ConfigError("sweep needs omega_min < omega_max")

    def grid(self, scale: float) -> np.ndarray:
        if self.omega_min is None:
            return np.linspace(-2 * scale, 2 * scale, self.points)
        return np.linspace(self.omega_min, self.omega_max, self.points)


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    alpha: float = DEFAULT_ALPHA
    sweep: Sweep = Sweep()
    output_path: Path | None = None
    format: str = "csv"
    preset: str | None = None
    refine_nu_prime: bool = False

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")


def parse_text(text: str) -> dict[str, float]:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = float(value)
        except ValueError:
            raise ConfigError(f"line {lineno}: {key} = {value!r} is not a number") from None
    return values


def params_from_values(values: dict[str, float]) -> tuple[SystemParams, float]:
    missing = [k for k in KEYS if k not in values]
    if missing:
        raise ConfigError("missing keys: " + ", ".join(missing))
    fields = {}
    for key, (name, scale) in KEYS.items():
        if name is not None:
            fields[name] = values[key] * scale
    params = SystemParams(**fields)
    try:
        validate(params)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    return params, values["alpha"]


def load_config(path, preset: str | None = None, **run_options) -> RunConfig:
    """Read a configuration file, optionally layered over a figure preset."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return _build(parse_text(text), preset, run_options)


def preset_config(name: str, **run_options) -> RunConfig:
    return _build({}, name, run_options)


def _build(values, preset, run_options) -> RunConfig:
    merged = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        merged.update(PRESETS[preset])
        if values.get("delta_hz", -1.0) > 0:
            warnings.warn(
                "positive delta_hz with a figure preset: the presets assume a red-detuned laser",
                RegimeWarning,
                stacklevel=3,
            )
    merged.update(values)
    params, alpha = params_from_values(merged)
    return RunConfig(params=params, alpha=alpha, preset=preset, **run_options)


def with_params(cfg: RunConfig, **changes) -> RunConfig:
    return replace(cfg, params=replace(cfg.params, **changes))
