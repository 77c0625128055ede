"""
Run configuration: built-in defaults < config file < command-line flags.

The config file uses the dotenv format, one ``KEY=value`` per line with
``#`` comments. Keys are the long flag names in upper snake case::

    OMEGA=1.0
    ACCEL=2.0
    PV_DELTA=1e-4
    OMEGA_RATIOS=0.5,1,2,3
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

import numpy as np
from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import ConfigurationError
from .models import DetectorParams, PVConfig, QubitState, RamseyConfig

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = "RINDLER_GATE_LOG_LEVEL"


def _as_bool(raw: str) -> bool:
    value = str(raw).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _as_floats(raw: Any) -> List[float]:
    if isinstance(raw, (list, tuple)):
        return [float(item) for item in raw]
    return [float(item) for item in str(raw).split(",") if item.strip()]


# Config-file key -> (RunConfig field, converter)
CONFIG_KEYS: Dict[str, tuple] = {
    "OMEGA": ("omega", float),
    "ACCEL": ("accel", float),
    "COUPLING": ("coupling", float),
    "BETA2": ("beta2", float),
    "PHI": ("phi", float),
    "EPSILON": ("epsilon", float),
    "PV_DELTA": ("pv_delta", float),
    "PV_CUTOFF": ("pv_cutoff", float),
    "PV_POINTS": ("pv_points", int),
    "GRID_MIN": ("grid_min", float),
    "GRID_MAX": ("grid_max", float),
    "GRID_N": ("grid_n", int),
    "MODE": ("mode", str),
    "CONDITIONING": ("conditioning", str),
    "PARTNER": ("partner", str),
    "GATE_STRENGTH": ("gate_strength", float),
    "GATE_REPETITIONS": ("gate_repetitions", int),
    "GATE_APPLIED": ("gate_applied", _as_bool),
    "CHANNEL_GROUP": ("channel_group", str),
    "OMEGA_RATIOS": ("omega_ratios", _as_floats),
    "OUTPUT": ("output", str),
    "FORMAT": ("format", str),
    "STRICT": ("strict", _as_bool),
}

DEFAULTS: Dict[str, Any] = {
    "omega": 1.0,
    "accel": 1.0,
    "coupling": 1.0,
    "beta2": 0.5,
    "phi": 0.0,
    "epsilon": 0.05,
    "pv_delta": None,
    "pv_cutoff": None,
    "pv_points": 64,
    "grid_min": None,
    "grid_max": None,
    "grid_n": None,
    "mode": "A+",
    "conditioning": "partner_detected",
    "partner": None,
    "gate_strength": 1.0,
    "gate_repetitions": 1,
    "gate_applied": True,
    "channel_group": None,
    "omega_ratios": [0.25 * k for k in range(1, 13)],
    "output": None,
    "format": "csv",
    "strict": False,
}


class RunConfig(BaseModel):
    """Everything one subcommand needs, validated"""
    model_config = ConfigDict(frozen=True)

    params: DetectorParams
    qubit: QubitState
    pv: PVConfig
    epsilon: float = Field(gt=0, allow_inf_nan=False)
    beta2: float = Field(ge=0.0, le=1.0)
    phi: float
    grid_min: Optional[float] = None
    grid_max: Optional[float] = None
    grid_n: Optional[int] = Field(default=None, ge=2)
    mode: str = "A+"
    conditioning: str = "partner_detected"
    partner: Optional[str] = None
    ramsey: RamseyConfig = RamseyConfig()
    channel_group: Optional[str] = None
    omega_ratios: List[float] = Field(min_length=1)
    output: Optional[Path] = None
    format: Literal["csv", "json"] = "csv"
    strict: bool = False

    @model_validator(mode="after")
    def _grid_bounds(self) -> "RunConfig":
        if self.grid_min is not None and self.grid_max is not None and not self.grid_min < self.grid_max:
            raise ValueError(f"grid-min {self.grid_min} must be below grid-max {self.grid_max}")
        if any(not ratio > 0 for ratio in self.omega_ratios):
            raise ValueError("omega ratios must be positive")
        return self

    def axis(self, default_min: float, default_max: float, default_n: int) -> np.ndarray:
        """Grid from the --grid-* flags, falling back to the given defaults"""
        low = default_min if self.grid_min is None else self.grid_min
        high = default_max if self.grid_max is None else self.grid_max
        points = default_n if self.grid_n is None else self.grid_n
        if not low < high:
            raise ConfigurationError(f"empty grid [{low}, {high}]")
        return np.linspace(low, high, points)


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """Read a dotenv-format config file into RunConfig field values"""
    if not path:
        return {}
    if not Path(path).is_file():
        raise ConfigurationError(f"config file not found: {path}")
    values = {}
    for key, raw in dotenv_values(path).items():
        if key not in CONFIG_KEYS:
            raise ConfigurationError(f"unknown config key {key!r} in {path}")
        field, convert = CONFIG_KEYS[key]
        if raw is None or raw == "":
            continue
        try:
            values[field] = convert(raw)
        except ValueError as exc:
            raise ConfigurationError(f"bad value for {key} in {path}: {exc}")
    logger.debug("loaded %d settings from %s", len(values), path)
    return values


def merge_settings(file_values: Mapping[str, Any], flags: Mapping[str, Any]) -> Dict[str, Any]:
    """Defaults, then file values, then flags that were actually given"""
    merged = dict(DEFAULTS)
    merged.update(file_values)
    merged.update({key: value for key, value in flags.items()
                   if key in DEFAULTS and value is not None})
    return merged


def build_run_config(settings: Mapping[str, Any]) -> RunConfig:
    """Validate merged settings; pydantic ValidationError propagates to the caller"""
    params = DetectorParams(omega=settings["omega"], accel=settings["accel"],
                            coupling=settings["coupling"])
    pv = PVConfig.for_ratio(
        params.omega_ratio(),
        excision_half_width=settings["pv_delta"],
        tail_cutoff=settings["pv_cutoff"],
        quadrature_points=settings["pv_points"],
    )
    ramsey = RamseyConfig(
        gate_applied=settings["gate_applied"],
        gate_strength=settings["gate_strength"],
        gate_repetitions=settings["gate_repetitions"],
    )
    return RunConfig(
        params=params,
        qubit=QubitState.from_population(settings["beta2"], settings["phi"]),
        pv=pv,
        epsilon=settings["epsilon"],
        beta2=settings["beta2"],
        phi=settings["phi"],
        grid_min=settings["grid_min"],
        grid_max=settings["grid_max"],
        grid_n=settings["grid_n"],
        mode=settings["mode"],
        conditioning=settings["conditioning"],
        partner=settings["partner"],
        ramsey=ramsey,
        channel_group=settings["channel_group"],
        omega_ratios=_as_floats(settings["omega_ratios"]),
        output=settings["output"],
        format=settings["format"],
        strict=settings["strict"],
    )


def load_environment() -> None:
    """Pick up RINDLER_GATE_* variables from a .env file in the working directory"""
    load_dotenv(dotenv_path=Path.cwd() / ".env", override=False)


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def resolve_log_level(flag: Optional[str]) -> str:
    """--log-level, else $RINDLER_GATE_LOG_LEVEL, else WARNING"""
    level = (flag or os.getenv(LOG_LEVEL_ENV) or "WARNING").strip().upper()
    if level not in LOG_LEVELS:
        source = "--log-level" if flag else LOG_LEVEL_ENV
        raise ConfigurationError(f"{source}: unknown logging level {level!r}; "
                                 f"expected one of {', '.join(LOG_LEVELS)}")
    return level

