"""
Invariant suite behind ``python -m rindler_gate selftest``.

Each check returns a CheckResult; informational checks report a value
without being able to fail the run.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy.special import dawsn

from . import amplitudes, interference, ramsey, resonance, spectra, wigner
from .models import Channel, DetectorParams, Pathway, PVConfig, QubitState, RamseyConfig

logger = logging.getLogger(__name__)

SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    informational: bool = False


CheckFn = Callable[[], Tuple[bool, str]]


def _relative(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


# ---------------------------------------------------------------------------
# Amplitudes
# ---------------------------------------------------------------------------

def check_omega_flip() -> Tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        ratio = rng.uniform(0.1, 3.0)
        channel = Channel(rng.choice([c.value for c in Channel]))
        omega = rng.uniform(-5.0, 5.0)
        if min(abs(omega - ratio), abs(omega + ratio)) <= 1e-3:
            continue
        accel = rng.uniform(0.5, 3.0)
        params = DetectorParams(omega=ratio * accel, accel=accel)
        excited, flipped = amplitudes.omega_flip_check(params, channel, omega)
        worst = max(worst, _relative(excited, flipped))
    return worst < 1e-12, f"max relative difference {worst:.2e}"


def check_mirror() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.3, accel=0.7)
    grid = np.linspace(-4.0, 4.0, 401)
    grid = grid[np.abs(np.abs(grid) - params.omega_ratio()) > 1e-3]
    worst = 0.0
    for pathway in Pathway:
        rr = amplitudes.amplitude_array(params, pathway, Channel.RR, grid)
        ll = amplitudes.amplitude_array(params, pathway, Channel.LL, -grid)
        worst = max(worst, float(np.max(np.abs(np.abs(rr) - np.abs(ll)) / np.abs(rr))))
    return worst < 1e-13, f"max relative |RR(W)| - |LL(-W)| {worst:.2e}"


def check_rl_conjugate_phase() -> Tuple[bool, str]:
    params = DetectorParams(omega=0.8, accel=2.5, coupling=1.5)
    grid = np.linspace(0.05, 4.0, 200)
    grid = grid[np.abs(grid - params.omega_ratio()) > 1e-3]
    prefactor = 1j * params.coupling ** 2 / 4.0
    product = (amplitudes.amplitude_array(params, Pathway.GEG, Channel.RL, grid)
               * amplitudes.amplitude_array(params, Pathway.GEG, Channel.RL, -grid)) / prefactor ** 2
    worst = float(np.max(np.abs(product.imag) / np.abs(product)))
    positive = bool(np.all(product.real > 0))
    return worst < 1e-12 and positive, f"max |Im|/|value| {worst:.2e}, real part positive: {positive}"


def check_origin_limit() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    worst = 0.0
    for pathway in Pathway:
        for channel in Channel:
            at_zero = amplitudes.channel_amplitude(params, pathway, channel, 0.0)
            nearby = amplitudes.channel_amplitude(params, pathway, channel, 1e-7)
            worst = max(worst, _relative(at_zero, nearby))
    return worst < 1e-6, f"max relative jump at Omega = 0: {worst:.2e}"


def check_coupling_scaling() -> Tuple[bool, str]:
    base = DetectorParams(omega=1.0, accel=1.5, coupling=1.0)
    doubled = base.model_copy(update={"coupling": 2.0})
    grid = np.array([-2.3, -0.4, 0.0, 0.6, 3.1])
    worst = 0.0
    for pathway in Pathway:
        for channel in Channel:
            a = amplitudes.amplitude_array(base, pathway, channel, grid)
            b = amplitudes.amplitude_array(doubled, pathway, channel, grid)
            worst = max(worst, float(np.max(np.abs(b - 4.0 * a))))
    return worst == 0.0, f"max |A(2g) - 4 A(g)| {worst:.2e}"


# ---------------------------------------------------------------------------
# Resonance
# ---------------------------------------------------------------------------

def check_resonant_exactness() -> Tuple[bool, str]:
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(20):
        params = DetectorParams(omega=rng.uniform(0.1, 3.0), accel=rng.uniform(0.5, 3.0),
                                coupling=rng.uniform(0.1, 2.0))
        qubit = QubitState.from_population(rng.uniform(), rng.uniform(0, 2 * math.pi))
        closed = resonance.resonant_state(params, qubit)
        rebuilt = resonance.resonant_from_residues(params, qubit)
        worst = max(worst, _relative(closed.overall, rebuilt.overall))
        for label in resonance.TERM_LABELS:
            worst = max(worst, abs(closed.terms[label] - rebuilt.terms[label]))
        for a, b in zip(closed.qubit_factor, rebuilt.qubit_factor):
            worst = max(worst, abs(a - b))
    small = resonance.resonant_state(DetectorParams(omega=1e-6, accel=1.0), QubitState(alpha=1, beta=0))
    gamma_error = abs(small.gamma - 1.0)
    return worst < 1e-12 and gamma_error < 1e-8, \
        f"max deviation {worst:.2e}; |gamma(1e-6) - 1| = {gamma_error:.1e}"


def check_z_gate() -> Tuple[bool, str]:
    rng = np.random.default_rng(SEED + 2)
    params = DetectorParams(omega=1.0, accel=1.0)
    for _ in range(100):
        qubit = QubitState.from_population(rng.uniform(), rng.uniform(0, 2 * math.pi))
        once = resonance.resonant_state(params, qubit)
        if once.qubit_factor != (qubit.alpha, -qubit.beta):
            return False, "qubit factor is not (alpha, -beta)"
        twice = resonance.resonant_state(params, once.detector_state())
        if twice.qubit_factor != (qubit.alpha, qubit.beta):
            return False, "applying the gate twice does not restore the qubit"
    return True, "100 random qubits"


def check_pv_oracle() -> Tuple[bool, str]:
    config = PVConfig()
    oracle = -2.0 * math.sqrt(math.pi) * dawsn(1.0)
    f = lambda x: np.exp(-x ** 2) / (x - 1.0)
    value = resonance.pv_integrate(f, [1.0], config).value
    halved = resonance.pv_integrate(
        f, [1.0], config.model_copy(update={"excision_half_width": 0.5e-4})).value
    error = abs(value - oracle)
    drift = _relative(value, halved)
    return error < 1e-8 and drift < 1e-6, f"|PV - oracle| {error:.2e}, delta-halving drift {drift:.2e}"


def check_sokhotski() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    worst = 0.0
    for channel in Channel:
        check = resonance.sokhotski_plemelj_check(params, Pathway.GEG, channel)
        worst = max(worst, check.difference / max(1.0, abs(check.expected)))
    return worst < 1e-6, f"max extrapolation mismatch {worst:.2e}"


def check_pv_delta_robustness() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    qubit = QubitState(alpha=1, beta=0)
    coarse = resonance.pv_state_coefficients(
        params, qubit, Channel.RR, PVConfig.for_ratio(1.0, excision_half_width=1e-3))
    fine = resonance.pv_state_coefficients(
        params, qubit, Channel.RR, PVConfig.for_ratio(1.0, excision_half_width=1e-4))
    drift = _relative(coarse.ground, fine.ground)
    return drift < 1e-6, f"relative change {drift:.2e}"


# ---------------------------------------------------------------------------
# Spectra and interference
# ---------------------------------------------------------------------------

def check_dominance() -> Tuple[bool, str]:
    mismatches = []
    worst_height = 0.0
    for ratio in (0.5, 1.0, 2.0):
        params = DetectorParams(omega=ratio, accel=1.0)
        grid = spectra.emission_spectra(params, epsilon=0.05)
        table = spectra.dominance_table(grid)
        mismatches += [f"{key}@{ratio}" for key, sign in spectra.DOMINANT_SIGNS.items() if table[key] != sign]
        _, geg = grid.peak("GEG_RR", positive_only=True)
        _, ege = grid.peak("EGE_LL", positive_only=True)
        worst_height = max(worst_height, _relative(geg, ege))
    passed = not mismatches and worst_height < 1e-10
    return passed, f"mismatches {mismatches or 'none'}; peak-height deviation {worst_height:.1e}"


def check_spectrum_positivity() -> Tuple[bool, str]:
    worst = 0.0
    finite = True
    for ratio in (0.5, 1.0, 2.0):
        grid = spectra.emission_spectra(DetectorParams(omega=ratio, accel=1.0), epsilon=0.05)
        for values in grid.values.values():
            finite = finite and bool(np.all(np.isfinite(values)))
            worst = min(worst, float(np.min(values)))
    return finite and worst >= 0.0, f"all finite: {finite}; smallest sample {worst:.1e}"


def check_epsilon_scaling() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    grid = np.linspace(0.5, 1.5, 10001)
    heights = [spectra.emission_spectrum(params, Pathway.GEG, Channel.RR, grid, eps).peak("GEG_RR")[1]
               for eps in (0.1, 0.05, 0.025)]
    ratios = (heights[1] / heights[0], heights[2] / heights[1])
    passed = abs(ratios[0] - 4.0) < 0.2 and abs(ratios[1] - 4.0) < 0.08
    return passed, f"peak ratio per halving of eps: {ratios[0]:.3f}, {ratios[1]:.3f}"


def check_rl_double_peak() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    grid = np.array([-1.2, -1.0, -0.8, 0.8, 1.0, 1.2])
    missing = []
    for pathway in Pathway:
        key = spectra.spectrum_key(pathway, Channel.RL)
        values = spectra.emission_spectrum(params, pathway, Channel.RL, grid, 0.05)[key]
        if not values[1] > max(values[0], values[2]):
            missing.append(f"{key}(-)")
        if not values[4] > max(values[3], values[5]):
            missing.append(f"{key}(+)")
    return not missing, f"missing peaks: {missing or 'none'}"


def check_integrated_symmetry() -> Tuple[bool, str]:
    worst = 0.0
    for ratio in (0.5, 1.0, 2.0):
        params = DetectorParams(omega=ratio, accel=1.0)
        for pathway in Pathway:
            rr = spectra.integrated_channel_probability(params, pathway, Channel.RR)
            ll = spectra.integrated_channel_probability(params, pathway, Channel.LL)
            worst = max(worst, _relative(rr, ll))
    return worst < 1e-8, f"max relative |RR - LL| {worst:.2e}"


def check_interference_structure() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    rr = interference.interference_map(params, "RR")
    ll = interference.interference_map(params, "LL")
    beta2, phi = rr.argmax()
    step_b = rr.beta2_axis[1] - rr.beta2_axis[0]
    step_p = rr.phi_axis[1] - rr.phi_axis[0]
    located = abs(beta2 - 0.5) <= step_b and abs(phi - math.pi) <= step_p
    scale = np.max(np.abs(rr.p_int))
    mirror = float(np.max(np.abs(rr.p_int - ll.p_int)) / scale)
    low = interference.interference_map(params.with_ratio(0.5), "RL+LR").max_abs_p_int()
    high = interference.interference_map(params.with_ratio(3.0), "RL+LR").max_abs_p_int()
    passed = located and mirror < 1e-8 and high < low
    return passed, (f"RR argmax ({beta2:.3f}, {phi:.3f}); LL/RR deviation {mirror:.1e}; "
                    f"RL+LR max {low:.3e} -> {high:.3e}")


def check_decomposition() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.7)
    worst = 0.0
    for beta2 in (0.0, 0.3, 0.5, 1.0):
        for phi in (0.0, 1.1, math.pi):
            qubit = QubitState.from_population(beta2, phi)
            for channel in Channel:
                grid = np.linspace(-3.0, 3.0, 61)
                total = interference.superposed_density(params, qubit, channel, grid, 0.05)
                for omega, expected in zip(grid, total):
                    background, p_int = interference.interference_density(
                        params, qubit, channel, omega, 0.05)
                    # destructive cells have p_total ~ 0, so compare on the background scale
                    worst = max(worst, abs(background + p_int - expected) / max(background, 1e-300))
    return worst < 1e-12, f"max deviation relative to p_background {worst:.2e}"


def check_single_pathway() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    worst = 0.0
    for beta2 in (0.0, 1.0):
        qubit = QubitState.from_population(beta2, 0.7)
        for channel in Channel:
            for omega in (-1.3, -0.4, 0.6, 1.0):
                _, p_int = interference.interference_density(params, qubit, channel, omega, 0.05)
                worst = max(worst, abs(p_int))
    return worst == 0.0, f"max |p_int| at |beta|^2 in {{0, 1}}: {worst:.1e}"


def check_phase_antisymmetry() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    worst = 0.0
    for channel in Channel:
        for phi in (0.0, 0.3, 1.9):
            background, forward = interference.interference_density(
                params, QubitState.from_population(0.4, phi), channel, -0.8, 0.05)
            _, shifted = interference.interference_density(
                params, QubitState.from_population(0.4, phi + math.pi), channel, -0.8, 0.05)
            worst = max(worst, abs(shifted + forward) / background)
    return worst < 1e-12, f"max |p_int(phi + pi) + p_int(phi)| / p_background {worst:.1e}"


def info_rl_phase() -> Tuple[bool, str]:
    params = DetectorParams(omega=1.0, accel=1.0)
    _, phi = interference.interference_map(params, "RL+LR").argmax()
    return True, f"RL+LR constructive maximum at phi = {phi:.4f}"


def info_sweet_spot() -> Tuple[bool, str]:
    spots = interference.sweet_spot_scan(DetectorParams(omega=1.0, accel=1.0),
                                         [0.25 * k for k in range(1, 13)], "RR")
    peak = interference.interior_maximum(spots)
    if peak is None:
        return True, "no interior maximum of max|p_int| over Omega_0 in [0.25, 3]"
    return True, f"interior maximum at Omega_0 = {peak.omega_ratio:g}"


# ---------------------------------------------------------------------------
# Wigner and Ramsey
# ---------------------------------------------------------------------------

def check_wigner_witness() -> Tuple[bool, str]:
    res = resonance.resonant_state(DetectorParams(omega=1.0, accel=2.0), QubitState(alpha=1, beta=0))
    conditioned = wigner.reduced_state(res, "A+", "partner_detected")
    grid = wigner.wigner_of_fock_mixture(conditioned)
    origin_error = abs(grid.at(0.0, 0.0) + 1.0 / math.pi)
    norm_error = abs(grid.normalization() - 1.0)
    fine_axis = np.linspace(-4.0, 4.0, 801)
    fine = wigner.wigner_of_fock_mixture(conditioned, fine_axis, fine_axis)
    negativity_error = abs(wigner.negativity_volume(fine) - wigner.fock_one_negativity())
    unconditioned = wigner.reduced_state(res, "A+", "none")
    mixture_error = float(np.max(np.abs(unconditioned.entries - np.diag([0.5, 0.5]))))
    passed = (origin_error < 1e-10 and norm_error < 1e-4 and negativity_error < 1e-4
              and mixture_error < 1e-12)
    return passed, (f"W(0,0) error {origin_error:.1e}; norm error {norm_error:.1e}; "
                    f"negativity error {negativity_error:.1e}")


def check_ramsey() -> Tuple[bool, str]:
    ideal = ramsey.fringe_visibility(ramsey.ramsey_fringe(RamseyConfig(gate_strength=0.0)))
    inverted = ramsey.fringe_visibility(ramsey.ramsey_fringe(RamseyConfig(gate_strength=1.0)))
    worst = 0.0
    for k in range(11):
        p = k / 10.0
        contrast = ramsey.fit_contrast(ramsey.ramsey_fringe(RamseyConfig(gate_strength=p)))
        worst = max(worst, abs(contrast - (1.0 - 2.0 * p)))
    twice = ramsey.ramsey_fringe(RamseyConfig(gate_strength=1.0, gate_repetitions=2))
    baseline = ramsey.ramsey_fringe(RamseyConfig(gate_strength=0.0))
    restored = bool(np.array_equal(twice.populations, baseline.populations))
    passed = abs(ideal - 1.0) < 1e-12 and abs(inverted + 1.0) < 1e-12 and worst < 1e-12 and restored
    return passed, f"visibility {ideal:+.3f} / {inverted:+.3f}; contrast-law error {worst:.1e}"


def check_wigner_rotation() -> Tuple[bool, str]:
    res = resonance.resonant_state(DetectorParams(omega=1.0, accel=2.0),
                                   QubitState.from_population(0.5, 0.4))
    axis = np.linspace(-4.0, 4.0, 161)
    worst = 0.0
    for conditioning in wigner.CONDITIONINGS:
        grid = wigner.wigner_of_fock_mixture(wigner.reduced_state(res, "A+", conditioning), axis, axis)
        values = grid.values
        for image in (values.T, values[::-1, :], values[:, ::-1]):
            worst = max(worst, float(np.max(np.abs(image - values))))
    return worst < 1e-14, f"max deviation under x <-> p and reflections {worst:.1e}"


def check_ramsey_bounds() -> Tuple[bool, str]:
    lowest, highest = 1.0, 0.0
    for k in range(11):
        for repetitions in range(4):
            fringe = ramsey.ramsey_fringe(RamseyConfig(gate_strength=k / 10.0,
                                                       gate_repetitions=repetitions))
            lowest = min(lowest, float(np.min(fringe.populations)))
            highest = max(highest, float(np.max(fringe.populations)))
    passed = lowest >= -1e-15 and highest <= 1.0 + 1e-15
    return passed, f"P_e in [{lowest:.3e}, {highest:.6f}]"


CHECKS: List[Tuple[str, CheckFn, bool]] = [
    ("omega-flip symmetry", check_omega_flip, False),
    ("RR/LL mirror", check_mirror, False),
    ("RL conjugate phase", check_rl_conjugate_phase, False),
    ("Omega = 0 continuity", check_origin_limit, False),
    ("g^2 scaling", check_coupling_scaling, False),
    ("resonant-state exactness", check_resonant_exactness, False),
    ("Z-gate witness", check_z_gate, False),
    ("PV Dawson oracle", check_pv_oracle, False),
    ("Sokhotski-Plemelj consistency", check_sokhotski, False),
    ("PV delta robustness", check_pv_delta_robustness, False),
    ("dominance table", check_dominance, False),
    ("spectrum positivity", check_spectrum_positivity, False),
    ("peak height ~ 1/eps^2", check_epsilon_scaling, False),
    ("RL double peak", check_rl_double_peak, False),
    ("integrated RR = LL", check_integrated_symmetry, False),
    ("interference structure", check_interference_structure, False),
    ("decomposition identity", check_decomposition, False),
    ("single pathway, no interference", check_single_pathway, False),
    ("phase antisymmetry", check_phase_antisymmetry, False),
    ("Wigner witness", check_wigner_witness, False),
    ("Wigner rotational symmetry", check_wigner_rotation, False),
    ("Ramsey inversion", check_ramsey, False),
    ("0 <= P_e <= 1", check_ramsey_bounds, False),
    ("RL+LR phase of maximum", info_rl_phase, True),
    ("RR sweet spot", info_sweet_spot, True),
]


def run_selftest() -> List[CheckResult]:
    results = []
    for name, check, informational in CHECKS:
        try:
            passed, detail = check()
        except Exception as exc:  # a crashing check is a failed check
            logger.exception("check %s raised", name)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=passed or informational,
                                   detail=detail, informational=informational))
    return results


def print_selftest_summary(results: List[CheckResult]) -> None:
    """Print pass/fail per property"""
    print("\n" + "=" * 80)
    print("  RINDLER-GATE SELFTEST")
    print("=" * 80)
    for result in results:
        marker = "i" if result.informational else ("✓" if result.passed else "✗")
        print(f"  {marker} {result.name:<32} {result.detail}")
    failed = sum(1 for r in results if not r.passed)
    print("-" * 80)
    print(f"  {len(results) - failed}/{len(results)} checks passed")
    print("=" * 80 + "\n")
