"""
Ramsey check of the vacuum-induced Z gate.

Conventions (basis |g> = index 0, |e> = index 1):
  preparation  R_y(pi/2)|g> = (|g> + |e>)/sqrt(2)
  gate         rho -> (1 - p) rho + p Z rho Z, applied gate_repetitions times
  analysis     R_y(pi/2) diag(1, e^{-i phi_R}), then P_e = <e|rho|e>

so P_e(phi_R) = [1 + (1 - 2p)^k cos phi_R] / 2 and p = 0 gives P_e(0) = 1.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple, Union

import numpy as np

from .errors import ConfigurationError
from .models import RamseyConfig

logger = logging.getLogger(__name__)

PAULI_Z = np.diag([1.0, -1.0]).astype(complex)
GROUND = np.array([1.0, 0.0], dtype=complex)


def rotation_y(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_channel(rho: np.ndarray, strength: float) -> np.ndarray:
    """(1 - p) rho + p Z rho Z"""
    return (1.0 - strength) * rho + strength * (PAULI_Z @ rho @ PAULI_Z)


@dataclass(frozen=True)
class RamseyFringe:
    phases: np.ndarray
    populations: np.ndarray
    config: RamseyConfig

    def __iter__(self) -> Iterator[Tuple[float, float]]:
        return iter(zip(self.phases.tolist(), self.populations.tolist()))

    def __len__(self) -> int:
        return len(self.phases)


def prepared_state() -> np.ndarray:
    psi = rotation_y(math.pi / 2.0) @ GROUND
    return np.outer(psi, psi.conj())


def excited_population(rho: np.ndarray, phase: float) -> float:
    analysis = rotation_y(math.pi / 2.0) @ np.diag([1.0, np.exp(-1j * phase)])
    final = analysis @ rho @ analysis.conj().T
    return float(final[1, 1].real)


def ramsey_fringe(config: RamseyConfig = RamseyConfig()) -> RamseyFringe:
    rho = prepared_state()
    strength = config.effective_strength()
    for _ in range(config.gate_repetitions):
        rho = gate_channel(rho, strength)
    phases = np.asarray(config.phase_axis, dtype=float)
    populations = np.array([excited_population(rho, phase) for phase in phases])
    logger.debug("Ramsey fringe p=%g, k=%d over %d phases",
                 strength, config.gate_repetitions, len(phases))
    return RamseyFringe(phases=phases, populations=populations, config=config)


FringeLike = Union[RamseyFringe, Iterable[Tuple[float, float]]]


def _as_arrays(fringe: FringeLike) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(fringe, RamseyFringe):
        return fringe.phases, fringe.populations
    pairs = np.asarray(list(fringe), dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or len(pairs) == 0:
        raise ConfigurationError("fringe must be a sequence of (phi_R, P_e) pairs")
    order = np.argsort(pairs[:, 0])
    return pairs[order, 0], pairs[order, 1]


def fringe_visibility(fringe: FringeLike) -> float:
    """Signed contrast (P_e(0) - P_e(pi)) / (P_e(0) + P_e(pi)); 0 for a flat fringe"""
    phases, populations = _as_arrays(fringe)
    if phases[-1] - phases[0] < 2.0 * math.pi - 1e-9:
        raise ConfigurationError("fringe must cover a full 2 pi period")
    if np.ptp(populations) == 0.0:
        return 0.0
    at_zero = float(np.interp(0.0, phases, populations, period=2.0 * math.pi))
    at_pi = float(np.interp(math.pi, phases, populations, period=2.0 * math.pi))
    if at_zero + at_pi == 0.0:
        return 0.0
    return (at_zero - at_pi) / (at_zero + at_pi)


def fit_contrast(fringe: FringeLike) -> float:
    """Least-squares C in P_e = 1/2 + (C/2) cos phi + s sin phi (offset also fitted)"""
    phases, populations = _as_arrays(fringe)
    design = np.column_stack([np.ones_like(phases), np.cos(phases), np.sin(phases)])
    coefficients, *_ = np.linalg.lstsq(design, populations, rcond=None)
    return float(2.0 * coefficients[1])
