"""
Closed-form two-photon amplitudes of the accelerated detector.

Every amplitude has the shape

    A(Omega) = s * g^2 / (4 hbar^2) * N(Omega) / sinh(pi Omega) / prod_k (Omega_0 + c_k Omega)

with s = +i for the g->e->g pathway and s = -i for e->g->e, N = Omega for the
RR/LL channels and N = 2 Omega_0 Omega a^{2i Omega} for the mixed channel.
The factor Omega / sinh(pi Omega) is evaluated as one even envelope so that
Omega = 0 takes its limit 1/pi instead of 0/0.
"""

import logging
import math
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, PoleError
from .models import Channel, DetectorParams, Pathway, QubitState

logger = logging.getLogger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]

PREFACTOR_PHASE = {
    Pathway.GEG: 1j,
    Pathway.EGE: -1j,
}

# Coefficients c in each linear denominator factor (Omega_0 + c * Omega).
# c = -1 puts the pole at +Omega_0, c = +1 at -Omega_0.
DENOMINATOR_SLOPES: Dict[Tuple[Pathway, Channel], Tuple[int, ...]] = {
    (Pathway.GEG, Channel.RR): (-1,),
    (Pathway.GEG, Channel.LL): (1,),
    (Pathway.GEG, Channel.RL): (-1, 1),
    (Pathway.EGE, Channel.RR): (1,),
    (Pathway.EGE, Channel.LL): (-1,),
    (Pathway.EGE, Channel.RL): (-1, 1),
}

POLE_TOLERANCE = 1e-14


# ---------------------------------------------------------------------------
# Special functions
# ---------------------------------------------------------------------------

def sinh_envelope(omegas: ArrayLike) -> np.ndarray:
    """Omega / sinh(pi Omega), even, equal to 1/pi at Omega = 0.

    Written with exp(-pi|Omega|) so large |Omega| underflows to 0
    instead of overflowing sinh.
    """
    x = np.abs(np.asarray(omegas, dtype=float))
    with np.errstate(invalid="ignore", divide="ignore"):
        decay = np.exp(-np.pi * x)
        value = 2.0 * x * decay / -np.expm1(-2.0 * np.pi * x)
    return np.where(x == 0.0, 1.0 / np.pi, value)


def unruh_norm(big_omega: float) -> float:
    """Unruh-mode normalisation f(Omega) = e^{-pi Omega/2} / sqrt(8 pi Omega sinh(pi Omega)).

    Omega sinh(pi Omega) is positive for either sign, so f is real and
    positive with f(-Omega) = e^{pi Omega} f(Omega).
    """
    if big_omega == 0:
        raise DomainError("unruh_norm is undefined at Omega = 0")
    if not math.isfinite(big_omega):
        raise DomainError(f"unruh_norm needs a finite Omega, got {big_omega!r}")
    x = abs(big_omega)
    # log(|Omega| sinh(pi |Omega|)) without overflow
    log_product = math.log(x) + math.pi * x + math.log1p(-math.exp(-2.0 * math.pi * x)) - math.log(2.0)
    return math.exp(-math.pi * big_omega / 2.0 - 0.5 * math.log(8.0 * math.pi) - 0.5 * log_product)


# ---------------------------------------------------------------------------
# Kernels on a signed resonance (omega_ratio may be negative for the flip)
# ---------------------------------------------------------------------------

def _numerator(omega_ratio: float, log_a: float, channel: Channel,
               omegas: np.ndarray) -> np.ndarray:
    """Channel numerator with the Omega factor already folded into the envelope"""
    envelope = sinh_envelope(omegas)
    if channel is Channel.RL:
        return 2.0 * omega_ratio * envelope * np.exp(2j * omegas * log_a)
    return envelope.astype(complex)


def pathway_kernel(omega_ratio: float, log_a: float, pathway: Pathway,
                   channel: Channel, omegas: ArrayLike,
                   epsilon: float = 0.0) -> np.ndarray:
    """Amplitude divided by g^2 / (4 hbar^2).

    ``epsilon`` > 0 shifts every linear denominator factor D -> D + i epsilon.
    With epsilon = 0 the caller is responsible for keeping off the poles.
    """
    pathway = Pathway(pathway)
    channel = Channel(channel)
    grid = np.asarray(omegas, dtype=float)
    denominator = np.ones_like(grid, dtype=complex)
    for slope in DENOMINATOR_SLOPES[(pathway, channel)]:
        denominator = denominator * (omega_ratio + slope * grid + 1j * epsilon)
    with np.errstate(divide="ignore", invalid="ignore"):
        return PREFACTOR_PHASE[pathway] * _numerator(omega_ratio, log_a, channel, grid) / denominator


def pole_locations(omega_ratio: float, pathway: Pathway, channel: Channel) -> Tuple[float, ...]:
    """Sorted real poles of one pathway/channel integrand"""
    slopes = DENOMINATOR_SLOPES[(Pathway(pathway), Channel(channel))]
    return tuple(sorted(-omega_ratio / slope for slope in slopes))


def _check_poles(omega_ratio: float, pathway: Pathway, channel: Channel,
                 omegas: np.ndarray) -> None:
    tolerance = POLE_TOLERANCE * max(1.0, abs(omega_ratio))
    for pole in pole_locations(omega_ratio, pathway, channel):
        hits = np.abs(omegas - pole) <= tolerance
        if np.any(hits):
            raise PoleError(pole, pathway=pathway.value, channel=channel.value)


def _coupling_prefactor(params: DetectorParams) -> float:
    return params.coupling ** 2 / (4.0 * params.hbar ** 2)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def amplitude_array(params: DetectorParams, pathway: Pathway, channel: Channel,
                    omegas: ArrayLike) -> np.ndarray:
    """Exact amplitudes on a grid; raises PoleError if any node sits on a pole"""
    pathway = Pathway(pathway)
    channel = Channel(channel)
    grid = np.asarray(omegas, dtype=float)
    ratio = params.omega_ratio()
    _check_poles(ratio, pathway, channel, grid)
    return _coupling_prefactor(params) * pathway_kernel(ratio, params.log_accel(), pathway, channel, grid)


def channel_amplitude(params: DetectorParams, pathway: Pathway, channel: Channel,
                      big_omega: float) -> complex:
    """A(Omega) for one pathway and one photon channel.

    Omega = 0 returns the removable-singularity limit (Omega / sinh -> 1/pi).
    """
    return complex(amplitude_array(params, pathway, channel, np.array([big_omega]))[0])


def regularized_amplitude(params: DetectorParams, pathway: Pathway, channel: Channel,
                          omegas: ArrayLike, epsilon: float) -> np.ndarray:
    """Amplitudes with every pole-bearing linear factor shifted by +i epsilon"""
    return _coupling_prefactor(params) * pathway_kernel(
        params.omega_ratio(), params.log_accel(), pathway, channel, omegas, epsilon)


def branch_amplitude(params: DetectorParams, pathway: Pathway, channel: Channel,
                     omegas: ArrayLike, epsilon: float = 0.0) -> np.ndarray:
    """Pathway amplitude written with the common +i g^2/4 prefactor of the superposed state.

    For GEG this is A_GEG itself; for EGE it is -A_EGE, the bracket that
    multiplies -beta in the superposition.
    """
    pathway = Pathway(pathway)
    if epsilon > 0:
        values = regularized_amplitude(params, pathway, channel, omegas, epsilon)
    else:
        values = amplitude_array(params, pathway, channel, omegas)
    return values if pathway is Pathway.GEG else -values


def omega_flip_check(params: DetectorParams, channel: Channel,
                     big_omega: float) -> Tuple[complex, complex]:
    """Return (A_EGE(omega), A_GEG(-omega)) at the same |omega|, a, g"""
    channel = Channel(channel)
    grid = np.array([big_omega], dtype=float)
    ratio = params.omega_ratio()
    log_a = params.log_accel()
    _check_poles(ratio, Pathway.EGE, channel, grid)
    _check_poles(-ratio, Pathway.GEG, channel, grid)
    scale = _coupling_prefactor(params)
    excited_first = scale * pathway_kernel(ratio, log_a, Pathway.EGE, channel, grid)[0]
    flipped_ground_first = scale * pathway_kernel(-ratio, log_a, Pathway.GEG, channel, grid)[0]
    return complex(excited_first), complex(flipped_ground_first)


def superposed_amplitude(params: DetectorParams, qubit: QubitState, channel: Channel,
                         big_omega: float) -> Tuple[complex, complex]:
    """Components of the superposed final state at one Omega.

    Returns (alpha * A_GEG, -beta * bracket_EGE): the first multiplies |g>,
    the second |e>. bracket_EGE carries the common +i prefactor, so the second
    component also equals beta * A_EGE.
    """
    grid = np.array([big_omega], dtype=float)
    ground = qubit.alpha * branch_amplitude(params, Pathway.GEG, channel, grid)[0]
    excited = -qubit.beta * branch_amplitude(params, Pathway.EGE, channel, grid)[0]
    return complex(ground), complex(excited)


def pole_residues(params: DetectorParams, pathway: Pathway,
                  channel: Channel) -> Dict[float, complex]:
    """Residues r of A(Omega) ~ r / (Omega - pole) at each real pole.

    Evaluated in closed form: the vanishing factor (Omega_0 + c Omega) equals
    c (Omega - pole), so r is the remaining expression at the pole divided by c.
    """
    pathway = Pathway(pathway)
    channel = Channel(channel)
    ratio = params.omega_ratio()
    log_a = params.log_accel()
    slopes = DENOMINATOR_SLOPES[(pathway, channel)]
    residues = {}
    for index, slope in enumerate(slopes):
        pole = -ratio / slope
        point = np.array([pole])
        rest = np.ones(1, dtype=complex)
        for other_index, other in enumerate(slopes):
            if other_index != index:
                rest = rest * (ratio + other * point)
        value = PREFACTOR_PHASE[pathway] * _numerator(ratio, log_a, channel, point) / rest / slope
        residues[pole] = complex(_coupling_prefactor(params) * value[0])
    logger.debug("residues %s/%s: %s", pathway.value, channel.value, residues)
    return residues
