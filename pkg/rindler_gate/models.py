"""
Validated input models: detector configuration, qubit preparation,
integrator and Ramsey settings.

All models are frozen pydantic models so they can be shared freely
between worker threads.
"""

import cmath
import math
from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import ConfigurationError

# Normalisation tolerance for |alpha|^2 + |beta|^2
QUBIT_NORM_TOLERANCE = 1e-12

# Minimum distance between the tail cutoff and the resonance
TAIL_MARGIN = 10.0


class Channel(str, Enum):
    """Photon pair channel: right-right, left-left, or mixed right-left"""
    RR = "RR"
    LL = "LL"
    RL = "RL"


class Pathway(str, Enum):
    """Second-order detector history"""
    GEG = "GEG"  # ground -> excited -> ground
    EGE = "EGE"  # excited -> ground -> excited


class DetectorParams(BaseModel):
    """Uniformly accelerated two-level detector, hbar = 1.

    ``coupling`` admits 0 as the no-interaction baseline; every
    amplitude then vanishes identically.
    """
    model_config = ConfigDict(frozen=True)

    omega: float = Field(gt=0, allow_inf_nan=False)
    accel: float = Field(gt=0, allow_inf_nan=False)
    coupling: float = Field(default=1.0, ge=0, allow_inf_nan=False)
    hbar: float = 1.0

    @field_validator("hbar")
    @classmethod
    def _hbar_is_one(cls, value: float) -> float:
        if value != 1.0:
            raise ValueError("hbar is fixed at 1 by convention")
        return value

    @model_validator(mode="after")
    def _ratio_is_finite(self) -> "DetectorParams":
        ratio = self.omega / self.accel
        if not math.isfinite(ratio) or ratio <= 0:
            raise ValueError(f"omega/accel must be finite and positive, got {ratio!r}")
        return self

    def omega_ratio(self) -> float:
        """Resonance frequency Omega_0 = omega / a"""
        return self.omega / self.accel

    def log_accel(self) -> float:
        """ln a, the phase rate of a^{2i Omega} = exp(2i Omega ln a)"""
        return math.log(self.accel)

    def with_ratio(self, omega_ratio: float) -> "DetectorParams":
        """Same acceleration and coupling, gap rescaled to hit ``omega_ratio``"""
        return self.model_copy(update={"omega": omega_ratio * self.accel})


class QubitState(BaseModel):
    """Detector preparation alpha|g> + beta|e>"""
    model_config = ConfigDict(frozen=True)

    alpha: complex
    beta: complex

    @model_validator(mode="after")
    def _normalised(self) -> "QubitState":
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > QUBIT_NORM_TOLERANCE:
            raise ValueError(f"|alpha|^2 + |beta|^2 must be 1, got {norm!r}")
        return self

    @classmethod
    def from_population(cls, beta2: float, phi: float = 0.0) -> "QubitState":
        """alpha = sqrt(1 - |beta|^2) (real), beta = |beta| e^{i phi}"""
        if not 0.0 <= beta2 <= 1.0:
            raise ValueError(f"|beta|^2 must lie in [0, 1], got {beta2!r}")
        return cls(alpha=complex(math.sqrt(1.0 - beta2)),
                   beta=cmath.rect(math.sqrt(beta2), phi))

    def z_flipped(self) -> "QubitState":
        """Apply Z: alpha|g> + beta|e> -> alpha|g> - beta|e>"""
        return QubitState(alpha=self.alpha, beta=-self.beta)


class PVConfig(BaseModel):
    """Principal-value integrator settings.

    ``epsilon`` is only used by the +i epsilon cross-check route.
    """
    model_config = ConfigDict(frozen=True)

    excision_half_width: float = Field(default=1e-4, gt=0, allow_inf_nan=False)
    tail_cutoff: float = Field(default=40.0, gt=0, allow_inf_nan=False)
    quadrature_points: int = Field(default=64, ge=16)
    epsilon: float = Field(default=1e-3, gt=0, allow_inf_nan=False)

    @field_validator("quadrature_points")
    @classmethod
    def _even_points(cls, value: int) -> int:
        # an odd rule puts its middle node on the excised pole
        if value % 2:
            raise ValueError(f"quadrature_points must be even, got {value}")
        return value

    @classmethod
    def for_ratio(cls, omega_ratio: float, **overrides) -> "PVConfig":
        """Defaults scaled to a resonance: delta = 1e-4 max(1, Omega_0), cutoff = Omega_0 + 40"""
        settings = {
            "excision_half_width": 1e-4 * max(1.0, abs(omega_ratio)),
            "tail_cutoff": abs(omega_ratio) + 40.0,
        }
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    def covers(self, omega_ratio: float) -> bool:
        """True when the cutoff leaves the required margin past the resonance"""
        return self.tail_cutoff > abs(omega_ratio) + TAIL_MARGIN

    def require_coverage(self, omega_ratio: float) -> None:
        if not self.covers(omega_ratio):
            raise ConfigurationError(
                f"tail cutoff {self.tail_cutoff} must exceed Omega_0 + {TAIL_MARGIN:g} = "
                f"{abs(omega_ratio) + TAIL_MARGIN}")


def default_phase_axis() -> List[float]:
    return np.linspace(0.0, 2.0 * np.pi, 73).tolist()


class RamseyConfig(BaseModel):
    """Ramsey verification run.

    gate_strength p weights the Z branch: rho -> (1-p) rho + p Z rho Z.
    """
    model_config = ConfigDict(frozen=True)

    gate_applied: bool = True
    gate_strength: float = Field(default=1.0, ge=0.0, le=1.0)
    gate_repetitions: int = Field(default=1, ge=0)
    phase_axis: List[float] = Field(default_factory=default_phase_axis, min_length=1)

    def effective_strength(self) -> float:
        return self.gate_strength if self.gate_applied else 0.0
