"""
Broadened two-photon emission spectra |A_eps(Omega)|^2.

Every linear denominator factor D becomes D + i eps, so the spectra are
finite on the resonances Omega = +-Omega_0 and peak there with height
~ 1/eps^2.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .amplitudes import regularized_amplitude
from .errors import ConfigurationError
from .models import Channel, DetectorParams, Pathway, PVConfig
from .quadrature import integrate_panels, symmetric_interval
from .workers import parallel_map

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.05
DEFAULT_GRID_POINTS = 4001

# Sign of the dominant emission frequency per pathway and channel
DOMINANT_SIGNS = {
    "GEG_RR": "+",
    "GEG_LL": "-",
    "EGE_RR": "-",
    "EGE_LL": "+",
}

SPECTRUM_KEYS: Tuple[Tuple[Pathway, Channel], ...] = tuple(
    (pathway, channel) for pathway in Pathway for channel in Channel)


def spectrum_key(pathway: Pathway, channel: Channel) -> str:
    return f"{Pathway(pathway).value}_{Channel(channel).value}"


@dataclass(frozen=True)
class SpectrumGrid:
    omegas: np.ndarray
    values: Dict[str, np.ndarray]
    epsilon: float
    params: DetectorParams

    def __getitem__(self, key: str) -> np.ndarray:
        return self.values[key]

    def peak(self, key: str, positive_only: bool = False) -> Tuple[float, float]:
        """(Omega, height) of the largest sample, optionally over Omega > 0 only"""
        values = self.values[key]
        mask = self.omegas > 0 if positive_only else np.ones_like(self.omegas, dtype=bool)
        index = np.flatnonzero(mask)[int(np.argmax(values[mask]))]
        return float(self.omegas[index]), float(values[index])


def default_grid(omega_ratio: float, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Uniform grid on [-4 Omega_0 - 2, 4 Omega_0 + 2]"""
    bound = 4.0 * omega_ratio + 2.0
    return np.linspace(-bound, bound, points)


def _validate(grid: Sequence[float], epsilon: float) -> np.ndarray:
    if not epsilon > 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    omegas = np.asarray(grid, dtype=float)
    if omegas.ndim != 1 or omegas.size == 0:
        raise ConfigurationError("frequency grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(omegas)):
        raise ConfigurationError("frequency grid contains non-finite values")
    if np.any(np.diff(omegas) <= 0):
        raise ConfigurationError("frequency grid must be strictly increasing")
    return omegas


def spectrum_values(params: DetectorParams, pathway: Pathway, channel: Channel,
                    omegas: np.ndarray, epsilon: float) -> np.ndarray:
    return np.abs(regularized_amplitude(params, pathway, channel, omegas, epsilon)) ** 2


def emission_spectrum(params: DetectorParams, pathway: Pathway, channel: Channel,
                      grid: Sequence[float], epsilon: float = DEFAULT_EPSILON) -> SpectrumGrid:
    """|A_eps(Omega)|^2 for one pathway and channel"""
    omegas = _validate(grid, epsilon)
    values = spectrum_values(params, pathway, channel, omegas, epsilon)
    return SpectrumGrid(omegas=omegas, values={spectrum_key(pathway, channel): values},
                        epsilon=epsilon, params=params)


def emission_spectra(params: DetectorParams, grid: Optional[Sequence[float]] = None,
                     epsilon: float = DEFAULT_EPSILON) -> SpectrumGrid:
    """All six pathway/channel spectra on one grid"""
    if grid is None:
        grid = default_grid(params.omega_ratio())
    omegas = _validate(grid, epsilon)
    columns = parallel_map(
        lambda key: spectrum_values(params, key[0], key[1], omegas, epsilon), SPECTRUM_KEYS)
    values = {spectrum_key(*key): column for key, column in zip(SPECTRUM_KEYS, columns)}
    logger.info("computed %d spectra on %d points (eps = %g)", len(values), omegas.size, epsilon)
    return SpectrumGrid(omegas=omegas, values=values, epsilon=epsilon, params=params)


def dominance_table(spectra: SpectrumGrid) -> Dict[str, str]:
    """Sign of the argmax frequency for each RR/LL spectrum"""
    table = {}
    for key in DOMINANT_SIGNS:
        omega, _ = spectra.peak(key)
        table[key] = "+" if omega > 0 else "-"
    return table


def regularised_panels(params: DetectorParams, epsilon: float, config: PVConfig) -> np.ndarray:
    """Panels on [-cutoff, cutoff], mirror-symmetric and graded towards +-Omega_0"""
    ratio = params.omega_ratio()
    config.require_coverage(ratio)
    inner = 0.25 * min(epsilon, ratio)
    return symmetric_interval(config.tail_cutoff, [ratio], inner)


def integrated_channel_probability(params: DetectorParams, pathway: Pathway, channel: Channel,
                                   epsilon: float = DEFAULT_EPSILON,
                                   config: Optional[PVConfig] = None) -> float:
    """int |A_eps(Omega)|^2 dOmega over [-cutoff, cutoff]"""
    if not epsilon > 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    config = config or PVConfig.for_ratio(params.omega_ratio())
    edges = regularised_panels(params, epsilon, config)
    total = integrate_panels(
        lambda omegas: spectrum_values(params, pathway, channel, omegas, epsilon),
        edges, config.quadrature_points)
    return total.real
