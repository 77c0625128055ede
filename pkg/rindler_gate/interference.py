"""
Pathway interference P_total = P_background + P_int.

The two branches are alpha * A_GEG and -beta * B, where B is the e->g->e
bracket carrying the common +i prefactor (B = -A_EGE). After integrating
over Omega every heatmap cell follows from three overlaps:

    gg = int |A_GEG|^2,  ee = int |B|^2,  ge = int A_GEG conj(B)

    p_background = (1 - b) gg + b ee
    p_int        = -2 sqrt(b (1 - b)) Re[e^{-i phi} ge]

with b = |beta|^2 and beta = sqrt(b) e^{i phi}.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .amplitudes import branch_amplitude
from .errors import ConfigurationError
from .models import Channel, DetectorParams, Pathway, PVConfig, QubitState
from .quadrature import integrate_panels, panel_nodes
from .spectra import DEFAULT_EPSILON, regularised_panels
from .workers import parallel_map

logger = logging.getLogger(__name__)

DEFAULT_AXIS_POINTS = 41

# Channel groups of the heatmaps; RL+LR is the single mixed A+B+ amplitude
CHANNEL_GROUPS = {
    "RR": Channel.RR,
    "LL": Channel.LL,
    "RL+LR": Channel.RL,
}


def group_channel(channel_group: str) -> Channel:
    try:
        return CHANNEL_GROUPS[channel_group]
    except KeyError:
        raise ConfigurationError(
            f"unknown channel group {channel_group!r}; expected one of {sorted(CHANNEL_GROUPS)}")


def file_tag(channel_group: str) -> str:
    """Filesystem-safe group name: RL+LR -> RL_LR"""
    return channel_group.replace("+", "_")


@dataclass(frozen=True)
class Overlaps:
    gg: float
    ee: float
    ge: complex


@dataclass(frozen=True)
class InterferenceMap:
    beta2_axis: np.ndarray
    phi_axis: np.ndarray
    omega_ratio: float
    channel_group: str
    epsilon: float
    p_background: np.ndarray
    p_int: np.ndarray
    p_total: np.ndarray
    overlaps: Overlaps

    def argmax(self) -> Tuple[float, float]:
        """(|beta|^2, phi) of the most constructive cell"""
        i, j = np.unravel_index(int(np.argmax(self.p_int)), self.p_int.shape)
        return float(self.beta2_axis[i]), float(self.phi_axis[j])

    def max_abs_p_int(self) -> float:
        return float(np.max(np.abs(self.p_int)))


@dataclass(frozen=True)
class SweetSpot:
    omega_ratio: float
    max_abs_p_int: float
    visibility: float


def default_beta2_axis(points: int = DEFAULT_AXIS_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def default_phi_axis(points: int = DEFAULT_AXIS_POINTS) -> np.ndarray:
    return np.linspace(0.0, 2.0 * np.pi, points)


def _check_epsilon(epsilon: float) -> None:
    if not epsilon > 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")


def interference_density(params: DetectorParams, qubit: QubitState, channel: Channel,
                         big_omega: float, epsilon: float = DEFAULT_EPSILON) -> Tuple[float, float]:
    """(p_background, p_int) at one frequency from the broadened amplitudes"""
    _check_epsilon(epsilon)
    grid = np.array([big_omega], dtype=float)
    ground = qubit.alpha * branch_amplitude(params, Pathway.GEG, channel, grid, epsilon)[0]
    excited = -qubit.beta * branch_amplitude(params, Pathway.EGE, channel, grid, epsilon)[0]
    p_background = abs(ground) ** 2 + abs(excited) ** 2
    p_int = 2.0 * (ground * np.conj(excited)).real
    return float(p_background), float(p_int)


def superposed_density(params: DetectorParams, qubit: QubitState, channel: Channel,
                       omegas: Sequence[float], epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """|alpha A_GEG - beta B|^2 on a grid, without the decomposition"""
    _check_epsilon(epsilon)
    grid = np.asarray(omegas, dtype=float)
    combined = (qubit.alpha * branch_amplitude(params, Pathway.GEG, channel, grid, epsilon)
                - qubit.beta * branch_amplitude(params, Pathway.EGE, channel, grid, epsilon))
    return np.abs(combined) ** 2


def pathway_overlaps(params: DetectorParams, channel: Channel,
                     epsilon: float = DEFAULT_EPSILON,
                     config: Optional[PVConfig] = None) -> Overlaps:
    """Omega-integrals of |A_GEG|^2, |B|^2 and A_GEG conj(B)"""
    _check_epsilon(epsilon)
    config = config or PVConfig.for_ratio(params.omega_ratio())
    edges = regularised_panels(params, epsilon, config)

    nodes, weights = panel_nodes(edges, config.quadrature_points)
    ground = branch_amplitude(params, Pathway.GEG, channel, nodes, epsilon)
    excited = branch_amplitude(params, Pathway.EGE, channel, nodes, epsilon)
    gg = float(np.dot(weights, np.abs(ground) ** 2))
    ee = float(np.dot(weights, np.abs(excited) ** 2))
    ge = complex(np.dot(weights, ground * np.conj(excited)))
    logger.debug("overlaps %s at Omega_0 = %g: gg=%.6e ee=%.6e ge=%s",
                 Channel(channel).value, params.omega_ratio(), gg, ee, ge)
    return Overlaps(gg=gg, ee=ee, ge=ge)


def integrate_superposed_probability(params: DetectorParams, qubit: QubitState,
                                     channel: Channel, epsilon: float = DEFAULT_EPSILON,
                                     config: Optional[PVConfig] = None) -> float:
    """int |alpha A_GEG - beta B|^2 dOmega, integrated directly"""
    config = config or PVConfig.for_ratio(params.omega_ratio())
    edges = regularised_panels(params, epsilon, config)
    total = integrate_panels(
        lambda omegas: superposed_density(params, qubit, channel, omegas, epsilon),
        edges, config.quadrature_points)
    return total.real


def cell_values(overlaps: Overlaps, beta2: np.ndarray,
                phi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(p_background, p_int) from the overlaps, broadcasting beta2 against phi"""
    beta2 = np.asarray(beta2, dtype=float)
    phi = np.asarray(phi, dtype=float)
    p_background = (1.0 - beta2) * overlaps.gg + beta2 * overlaps.ee
    coherence = np.sqrt(beta2 * (1.0 - beta2))
    p_int = -2.0 * coherence * (np.exp(-1j * phi) * overlaps.ge).real
    return np.broadcast_to(p_background, np.broadcast(beta2, phi).shape), p_int


def _validate_axes(beta2_axis: Sequence[float], phi_axis: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    beta2 = np.asarray(beta2_axis, dtype=float)
    phi = np.asarray(phi_axis, dtype=float)
    if beta2.size == 0 or phi.size == 0:
        raise ConfigurationError("interference axes must be non-empty")
    if np.any(beta2 < 0.0) or np.any(beta2 > 1.0):
        raise ConfigurationError("|beta|^2 axis must lie in [0, 1]")
    if np.any(phi < 0.0) or np.any(phi > 2.0 * math.pi):
        raise ConfigurationError("phi axis must lie in [0, 2 pi]")
    return beta2, phi


def interference_map(params: DetectorParams, channel_group: str = "RR",
                     beta2_axis: Optional[Sequence[float]] = None,
                     phi_axis: Optional[Sequence[float]] = None,
                     epsilon: float = DEFAULT_EPSILON,
                     config: Optional[PVConfig] = None) -> InterferenceMap:
    """Integrated P_int / P_background heatmap over (|beta|^2, phi), row-major in |beta|^2"""
    channel = group_channel(channel_group)
    beta2, phi = _validate_axes(
        default_beta2_axis() if beta2_axis is None else beta2_axis,
        default_phi_axis() if phi_axis is None else phi_axis)
    overlaps = pathway_overlaps(params, channel, epsilon, config)
    p_background, p_int = cell_values(overlaps, beta2[:, None], phi[None, :])
    p_background = np.array(p_background)
    return InterferenceMap(
        beta2_axis=beta2,
        phi_axis=phi,
        omega_ratio=params.omega_ratio(),
        channel_group=channel_group,
        epsilon=epsilon,
        p_background=p_background,
        p_int=p_int,
        p_total=p_background + p_int,
        overlaps=overlaps,
    )


def sweet_spot_scan(params_base: DetectorParams, omega_ratios: Sequence[float],
                    channel_group: str = "RR", epsilon: float = DEFAULT_EPSILON,
                    config: Optional[PVConfig] = None,
                    phi_axis: Optional[Sequence[float]] = None) -> List[SweetSpot]:
    """max |p_int| on the |beta|^2 = 1/2 line for each Omega_0.

    ``params_base`` fixes a and g; the gap is rescaled per Omega_0. Without
    an explicit config each Omega_0 gets its own scaled defaults.
    """
    channel = group_channel(channel_group)
    ratios = [float(r) for r in omega_ratios]
    if any(not r > 0 for r in ratios):
        raise ConfigurationError("omega ratios must be positive")
    phi = default_phi_axis() if phi_axis is None else np.asarray(phi_axis, dtype=float)

    def scan(ratio: float) -> SweetSpot:
        params = params_base.with_ratio(ratio)
        overlaps = pathway_overlaps(params, channel, epsilon,
                                    config or PVConfig.for_ratio(ratio))
        p_background, p_int = cell_values(overlaps, np.full_like(phi, 0.5), phi)
        peak = float(np.max(np.abs(p_int)))
        background = float(p_background[0])
        visibility = peak / background if background > 0 else 0.0
        return SweetSpot(omega_ratio=ratio, max_abs_p_int=peak, visibility=visibility)

    spots = parallel_map(scan, ratios)
    logger.info("sweet-spot scan %s over %d ratios", channel_group, len(spots))
    return spots


def interior_maximum(spots: Sequence[SweetSpot]) -> Optional[SweetSpot]:
    """The largest entry if it is strictly inside the scanned range, else None"""
    if len(spots) < 3:
        return None
    values = [spot.max_abs_p_int for spot in spots]
    best = int(np.argmax(values))
    if 0 < best < len(spots) - 1:
        return spots[best]
    return None
