"""
Resonant (on-shell) part of the final state and the principal-value
integrator for the off-resonant remainder.

The +i epsilon prescription splits every pathway integral as

    lim_{eps->0} int A_eps = PV int A  -  i pi sum_poles h(pole)

where h is the amplitude with the vanishing linear factor removed. The
delta weights -i pi h(pole) of all channels combine into the resonant
state: one common prefactor (g^2/4) gamma, four mode-pair terms, and the
detector factor (alpha, -beta).
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .amplitudes import (
    DENOMINATOR_SLOPES,
    pathway_kernel,
    pole_locations,
    pole_residues,
    sinh_envelope,
)
from .errors import ConfigurationError, TruncationWarning
from .models import Channel, DetectorParams, Pathway, PVConfig, QubitState
from .quadrature import graded_breakpoints, panel_nodes

logger = logging.getLogger(__name__)

# Mode-pair labels of the resonant terms, in output order
TERM_LABELS = ("A+A-", "B+B-", "A+B+", "A-B-")

# Relative size of |f(+-cutoff)| that counts as a truncated tail
TAIL_TOLERANCE = 1e-12

# Multiples of PVConfig.epsilon sampled before extrapolating to epsilon = 0
EPSILON_LADDER = (10.0, 1.0, 0.1)


@dataclass(frozen=True)
class ResonantState:
    """overall * sum_k terms[k] |pair_k> (x) (qubit_factor[0]|g> + qubit_factor[1]|e>)"""
    omega_ratio: float
    log_accel: float
    gamma: float
    overall: complex
    terms: Dict[str, complex]
    qubit_factor: Tuple[complex, complex]

    def detector_state(self) -> QubitState:
        """Qubit factor as a validated state, for chaining the gate"""
        return QubitState(alpha=self.qubit_factor[0], beta=self.qubit_factor[1])


@dataclass(frozen=True)
class PVResult:
    value: complex
    warnings: Tuple[str, ...] = ()
    nodes: int = 0

    def __complex__(self) -> complex:
        return complex(self.value)


@dataclass(frozen=True)
class BranchCoefficients:
    """PV-part coefficients multiplying |g> (ground) and |e> (excited)"""
    ground: complex
    excited: complex
    warnings: Tuple[str, ...] = ()


@dataclass(frozen=True)
class SokhotskiCheck:
    epsilons: Tuple[float, ...]
    samples: Tuple[complex, ...]
    extrapolated: complex
    principal_value: complex
    delta_sum: complex
    difference: float = field(default=0.0)

    @property
    def expected(self) -> complex:
        return self.principal_value + self.delta_sum


# ---------------------------------------------------------------------------
# Closed-form resonant state
# ---------------------------------------------------------------------------

def resonant_state(params: DetectorParams, qubit: QubitState) -> ResonantState:
    """Exact on-shell part of the superposed final state"""
    ratio = params.omega_ratio()
    log_a = params.log_accel()
    gamma = float(math.pi * sinh_envelope(ratio))
    overall = complex(params.coupling ** 2 / (4.0 * params.hbar ** 2) * gamma)
    phase = complex(math.cos(2.0 * ratio * log_a), math.sin(2.0 * ratio * log_a))
    terms = {
        "A+A-": 1.0 + 0.0j,
        "B+B-": 1.0 + 0.0j,
        "A+B+": phase,
        "A-B-": phase.conjugate(),
    }
    return ResonantState(
        omega_ratio=ratio,
        log_accel=log_a,
        gamma=gamma,
        overall=overall,
        terms=terms,
        qubit_factor=(qubit.alpha, -qubit.beta),
    )


def delta_weights(params: DetectorParams, pathway: Pathway,
                  channel: Channel) -> Dict[float, complex]:
    """-i pi h(pole) for each pole of A_pathway,channel.

    For the factor (Omega_0 + c Omega), h(pole) = c * residue.
    """
    pathway = Pathway(pathway)
    channel = Channel(channel)
    ratio = params.omega_ratio()
    residues = pole_residues(params, pathway, channel)
    weights = {}
    for slope in DENOMINATOR_SLOPES[(pathway, channel)]:
        pole = -ratio / slope
        weights[pole] = -1j * math.pi * slope * residues[pole]
    return weights


def _term_label(channel: Channel, pole: float) -> str:
    if channel is Channel.RR:
        return "A+A-"
    if channel is Channel.LL:
        return "B+B-"
    return "A+B+" if pole > 0 else "A-B-"


def resonance_weights(params: DetectorParams, pathway: Pathway) -> Dict[str, complex]:
    """Delta weights of one branch amplitude (common +i prefactor), keyed by mode pair"""
    pathway = Pathway(pathway)
    sign = 1.0 if pathway is Pathway.GEG else -1.0
    collected = {label: 0j for label in TERM_LABELS}
    for channel in Channel:
        for pole, weight in delta_weights(params, pathway, channel).items():
            collected[_term_label(channel, pole)] += sign * weight
    return collected


def resonant_from_residues(params: DetectorParams, qubit: QubitState) -> ResonantState:
    """Rebuild the resonant state from pole residues instead of the closed form.

    The term shapes come from unit coupling so that g = 0 still has
    well-defined terms; the overall factor is rescaled by g^2 afterwards.
    """
    unit = params.model_copy(update={"coupling": 1.0})
    ground = resonance_weights(unit, Pathway.GEG)
    excited = resonance_weights(unit, Pathway.EGE)
    unit_overall = ground["A+A-"]
    terms = {label: ground[label] / unit_overall for label in TERM_LABELS}
    branch_ratio = excited["A+A-"] / unit_overall
    return ResonantState(
        omega_ratio=params.omega_ratio(),
        log_accel=params.log_accel(),
        gamma=4.0 * unit_overall.real,
        overall=unit_overall * params.coupling ** 2,
        terms=terms,
        qubit_factor=(qubit.alpha, -qubit.beta * branch_ratio),
    )


# ---------------------------------------------------------------------------
# Principal value
# ---------------------------------------------------------------------------

def _check_separation(poles: Sequence[float], half_width: float, cutoff: float) -> None:
    for pole in poles:
        if not -cutoff + half_width < pole < cutoff - half_width:
            raise ConfigurationError(
                f"pole at {pole} lies outside the integration range [-{cutoff}, {cutoff}]")
    for left, right in zip(poles[:-1], poles[1:]):
        if right - left <= 2.0 * half_width:
            raise ConfigurationError(
                f"poles at {left} and {right} are closer than 2 * delta = {2.0 * half_width}")


def fitted_half_width(poles: Sequence[float], half_width: float) -> float:
    """Excision half-width, narrowed to a quarter of the closest pole spacing if needed"""
    gaps = np.diff(np.asarray(poles, dtype=float))
    if gaps.size and 2.0 * half_width >= float(gaps.min()):
        narrowed = 0.25 * float(gaps.min())
        logger.info("poles %.3g apart; excision half-width %.3g -> %.3g",
                    float(gaps.min()), half_width, narrowed)
        return narrowed
    return half_width


def _tail_warnings(f: Callable[[np.ndarray], np.ndarray], cutoff: float,
                   value: complex) -> List[str]:
    ends = np.abs(np.asarray(f(np.array([-cutoff, cutoff])), dtype=complex))
    tail = float(np.max(ends))
    if not np.isfinite(tail) or tail > TAIL_TOLERANCE * max(1.0, abs(value)):
        message = (f"integrand is still {tail:.3e} at |Omega| = {cutoff}; "
                   "raise the tail cutoff")
        warnings.warn(message, TruncationWarning, stacklevel=3)
        logger.warning(message)
        return [message]
    return []


def estimate_residue(f: Callable[[np.ndarray], np.ndarray], pole: float, step: float) -> complex:
    """Symmetric-difference estimate step * (f(p + step) - f(p - step)) / 2"""
    values = np.asarray(f(np.array([pole - step, pole + step])), dtype=complex)
    return complex(step * (values[1] - values[0]) / 2.0)


def pv_integrate(f: Callable[[np.ndarray], np.ndarray], poles: Iterable[float],
                 config: PVConfig,
                 residues: Optional[Dict[float, complex]] = None) -> PVResult:
    """Principal value of int_{-cutoff}^{cutoff} f over simple real poles.

    Each pole p is excised by the panel [p - delta, p + delta]. On it f is
    replaced by f - r / (x - p), whose symmetric PV is zero, so only the
    smooth remainder is integrated. Outside, f is integrated directly on
    panels graded away from the pole. ``residues`` may supply exact r;
    otherwise r is estimated from f at p +- delta/2.
    """
    ordered = sorted(float(p) for p in poles)
    delta = fitted_half_width(ordered, config.excision_half_width)
    cutoff = config.tail_cutoff
    _check_separation(ordered, delta, cutoff)

    edges = graded_breakpoints(-cutoff, cutoff, ordered, delta)
    nodes, weights = panel_nodes(edges, config.quadrature_points)
    nodes = nodes.reshape(len(edges) - 1, config.quadrature_points)
    weights = weights.reshape(nodes.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.asarray(f(nodes.ravel()), dtype=complex).reshape(nodes.shape)

    for pole in ordered:
        panel = int(np.searchsorted(edges, pole)) - 1
        if not (np.isclose(edges[panel], pole - delta) and np.isclose(edges[panel + 1], pole + delta)):
            raise ConfigurationError(f"excision half-width {delta} is too wide for the panel layout")
        if residues is not None and pole in residues:
            residue = complex(residues[pole])
        else:
            residue = estimate_residue(f, pole, 0.5 * delta)
        logger.debug("excising pole %.12g with residue %s", pole, residue)
        values[panel] = values[panel] - residue / (nodes[panel] - pole)

    if not np.all(np.isfinite(values)):
        raise ConfigurationError("integrand is not finite on the quadrature nodes")
    value = complex(np.dot(weights.ravel(), values.ravel()))
    messages = _tail_warnings(f, cutoff, value)
    return PVResult(value=value, warnings=tuple(messages), nodes=int(nodes.size))


def iepsilon_integrate(f: Callable[[np.ndarray], np.ndarray], poles: Iterable[float],
                       epsilon: float, config: PVConfig) -> complex:
    """int_{-cutoff}^{cutoff} of an already +i epsilon regularised integrand.

    Panels are graded down to epsilon/4 around the real parts of the poles.
    """
    if epsilon <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    ordered = sorted(float(p) for p in poles)
    inner = 0.25 * epsilon
    _check_separation(ordered, inner, config.tail_cutoff)
    edges = graded_breakpoints(-config.tail_cutoff, config.tail_cutoff, ordered, inner)
    nodes, weights = panel_nodes(edges, config.quadrature_points)
    return complex(np.dot(weights, np.asarray(f(nodes), dtype=complex)))


def extrapolate_to_zero(epsilons: Sequence[float], samples: Sequence[complex]) -> complex:
    """Lagrange interpolation of samples(epsilon) evaluated at epsilon = 0"""
    total = 0j
    for i, (eps_i, sample) in enumerate(zip(epsilons, samples)):
        basis = 1.0
        for j, eps_j in enumerate(epsilons):
            if j != i:
                basis *= eps_j / (eps_j - eps_i)
        total += basis * sample
    return total


def _exact_integrand(params: DetectorParams, pathway: Pathway, channel: Channel):
    ratio = params.omega_ratio()
    log_a = params.log_accel()
    scale = params.coupling ** 2 / (4.0 * params.hbar ** 2)
    return lambda omegas: scale * pathway_kernel(ratio, log_a, pathway, channel, omegas)


def sokhotski_plemelj_check(params: DetectorParams, pathway: Pathway, channel: Channel,
                            config: Optional[PVConfig] = None,
                            epsilons: Optional[Sequence[float]] = None) -> SokhotskiCheck:
    """Compare the epsilon -> 0 limit of the +i epsilon integral with PV + delta weights.

    Without explicit ``epsilons`` the samples are taken at
    EPSILON_LADDER multiples of ``config.epsilon``.
    """
    pathway = Pathway(pathway)
    channel = Channel(channel)
    ratio = params.omega_ratio()
    config = config or PVConfig.for_ratio(ratio)
    if epsilons is None:
        epsilons = tuple(factor * config.epsilon for factor in EPSILON_LADDER)
    poles = pole_locations(ratio, pathway, channel)
    log_a = params.log_accel()
    scale = params.coupling ** 2 / (4.0 * params.hbar ** 2)

    samples = []
    for eps in epsilons:
        regularised = (lambda omegas, eps=eps:
                       scale * pathway_kernel(ratio, log_a, pathway, channel, omegas, eps))
        samples.append(iepsilon_integrate(regularised, poles, eps, config))
    extrapolated = extrapolate_to_zero(epsilons, samples)

    principal = pv_integrate(_exact_integrand(params, pathway, channel), poles, config,
                             residues=pole_residues(params, pathway, channel))
    delta_sum = complex(sum(delta_weights(params, pathway, channel).values()))
    difference = abs(extrapolated - (principal.value + delta_sum))
    logger.info("Sokhotski-Plemelj %s/%s at Omega_0 = %g: difference %.3e",
                pathway.value, channel.value, ratio, difference)
    return SokhotskiCheck(
        epsilons=tuple(epsilons),
        samples=tuple(samples),
        extrapolated=extrapolated,
        principal_value=principal.value,
        delta_sum=delta_sum,
        difference=difference,
    )


def pathway_pv(params: DetectorParams, pathway: Pathway, channel: Channel,
               config: PVConfig) -> PVResult:
    """PV integral of one branch amplitude (EGE carries the common +i prefactor)"""
    pathway = Pathway(pathway)
    channel = Channel(channel)
    ratio = params.omega_ratio()
    sign = 1.0 if pathway is Pathway.GEG else -1.0
    integrand = _exact_integrand(params, pathway, channel)
    residues = {pole: sign * residue
                for pole, residue in pole_residues(params, pathway, channel).items()}
    result = pv_integrate(lambda omegas: sign * integrand(omegas),
                          pole_locations(ratio, pathway, channel), config, residues)
    return result


def pv_state_coefficients(params: DetectorParams, qubit: QubitState, channel: Channel,
                          config: Optional[PVConfig] = None) -> BranchCoefficients:
    """Off-resonant coefficients (alpha PV int A_GEG, -beta PV int bracket_EGE)"""
    ratio = params.omega_ratio()
    config = config or PVConfig.for_ratio(ratio)
    config.require_coverage(ratio)
    ground = pathway_pv(params, Pathway.GEG, channel, config)
    excited = pathway_pv(params, Pathway.EGE, channel, config)
    return BranchCoefficients(
        ground=qubit.alpha * ground.value,
        excited=-qubit.beta * excited.value,
        warnings=ground.warnings + excited.warnings,
    )
