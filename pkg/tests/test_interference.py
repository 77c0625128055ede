import math

import numpy as np
import pytest

from rindler_gate.errors import ConfigurationError
from rindler_gate.interference import (cell_values, file_tag, integrate_superposed_probability,
                                       interference_density, interference_map, interior_maximum,
                                       pathway_overlaps, superposed_density, sweet_spot_scan,
                                       SweetSpot)
from rindler_gate.models import Channel, DetectorParams, PVConfig, QubitState


@pytest.mark.parametrize("beta2", [0.0, 1.0])
def test_single_pathway_has_no_interference(unit_params, beta2):
    qubit = QubitState.from_population(beta2, 0.7)
    for channel in Channel:
        _, p_int = interference_density(unit_params, qubit, channel, 0.6, 0.05)
        assert p_int == 0.0


def test_phase_shift_by_pi_flips_interference(unit_params):
    for channel in Channel:
        _, forward = interference_density(unit_params, QubitState.from_population(0.4, 0.3),
                                          channel, -0.8, 0.05)
        _, shifted = interference_density(unit_params, QubitState.from_population(0.4, 0.3 + math.pi),
                                          channel, -0.8, 0.05)
        assert shifted == pytest.approx(-forward, rel=1e-12)


def test_decomposition_identity():
    params = DetectorParams(omega=1.2, accel=1.5)
    qubit = QubitState.from_population(0.3, 2.0)
    grid = np.linspace(-3.0, 3.0, 31)
    for channel in Channel:
        totals = superposed_density(params, qubit, channel, grid, 0.05)
        for omega, total in zip(grid, totals):
            background, p_int = interference_density(params, qubit, channel, omega, 0.05)
            assert background + p_int == pytest.approx(total, abs=1e-12 * background)


def test_rr_map_peaks_at_equal_superposition_and_pi(unit_params):
    result = interference_map(unit_params, "RR")
    beta2, phi = result.argmax()
    assert beta2 == pytest.approx(0.5, abs=result.beta2_axis[1] - result.beta2_axis[0])
    assert phi == pytest.approx(math.pi, abs=result.phi_axis[1] - result.phi_axis[0])
    assert result.p_int.shape == (41, 41)
    np.testing.assert_allclose(result.p_total, result.p_background + result.p_int)


def test_mixed_group_maximum_uses_the_same_phase(unit_params):
    _, phi = interference_map(unit_params, "RL+LR").argmax()
    assert phi == pytest.approx(math.pi, abs=2 * math.pi / 40)


def test_ll_map_equals_rr_map(unit_params):
    rr = interference_map(unit_params, "RR")
    ll = interference_map(unit_params, "LL")
    scale = rr.max_abs_p_int()
    assert np.max(np.abs(rr.p_int - ll.p_int)) <= 1e-8 * scale


def test_map_edges_and_phase_antisymmetry(unit_params):
    result = interference_map(unit_params, "RR")
    assert np.all(result.p_int[0] == 0.0) and np.all(result.p_int[-1] == 0.0)
    scale = result.max_abs_p_int()
    np.testing.assert_allclose(result.p_int[:, 20:], -result.p_int[:, :21], atol=1e-12 * scale)


def test_cells_match_direct_integration(unit_params):
    qubit = QubitState.from_population(0.3, 1.1)
    overlaps = pathway_overlaps(unit_params, Channel.RR, 0.05)
    background, p_int = cell_values(overlaps, 0.3, 1.1)
    direct = integrate_superposed_probability(unit_params, qubit, Channel.RR, 0.05)
    assert float(background) + float(p_int) == pytest.approx(direct, rel=1e-10)


def test_mixed_interference_falls_with_ratio(unit_params):
    low = interference_map(unit_params.with_ratio(0.5), "RL+LR").max_abs_p_int()
    high = interference_map(unit_params.with_ratio(3.0), "RL+LR").max_abs_p_int()
    assert high < low


def test_sweet_spot_scan_shape_and_scaling(unit_params):
    ratios = [0.5, 1.0, 2.0]
    spots = sweet_spot_scan(unit_params, ratios, "RL+LR")
    assert [spot.omega_ratio for spot in spots] == ratios
    assert spots[-1].max_abs_p_int < spots[0].max_abs_p_int
    stronger = sweet_spot_scan(unit_params.model_copy(update={"coupling": 2.0}), ratios, "RL+LR")
    for weak, strong in zip(spots, stronger):
        assert strong.max_abs_p_int == pytest.approx(16.0 * weak.max_abs_p_int, rel=1e-12)
        assert strong.visibility == pytest.approx(weak.visibility, rel=1e-12)


def test_interior_maximum():
    spots = [SweetSpot(r, v, 0.0) for r, v in [(0.5, 1.0), (1.0, 3.0), (2.0, 2.0)]]
    assert interior_maximum(spots).omega_ratio == 1.0
    assert interior_maximum(spots[::-1][:2]) is None
    assert interior_maximum([SweetSpot(r, r, 0.0) for r in (1.0, 2.0, 3.0)]) is None


def test_invalid_inputs(unit_params):
    with pytest.raises(ConfigurationError):
        interference_map(unit_params, "RLR")
    with pytest.raises(ConfigurationError):
        interference_map(unit_params, "RR", beta2_axis=[1.5])
    with pytest.raises(ConfigurationError):
        interference_map(unit_params, "RR", phi_axis=[])
    with pytest.raises(ConfigurationError):
        sweet_spot_scan(unit_params, [0.0, 1.0])
    with pytest.raises(ConfigurationError):
        interference_density(unit_params, QubitState(alpha=1, beta=0), Channel.RR, 0.3, 0.0)


def test_file_tag():
    assert file_tag("RL+LR") == "RL_LR"
    assert file_tag("RR") == "RR"


def test_map_rejects_cutoff_inside_resonance(unit_params):
    with pytest.raises(ConfigurationError, match="tail cutoff"):
        interference_map(unit_params, "RR", beta2_axis=[0.5], phi_axis=[0.0],
                         config=PVConfig(tail_cutoff=5.0))
    with pytest.raises(ConfigurationError, match="tail cutoff"):
        pathway_overlaps(DetectorParams(omega=3.0, accel=1.0), Channel.RL,
                         config=PVConfig(tail_cutoff=12.0))
