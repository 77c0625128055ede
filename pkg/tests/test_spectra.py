import numpy as np
import pytest

from rindler_gate.errors import ConfigurationError
from rindler_gate.models import Channel, DetectorParams, Pathway, PVConfig
from rindler_gate.spectra import (DOMINANT_SIGNS, dominance_table, emission_spectra, emission_spectrum,
                                  integrated_channel_probability)


def test_geg_rr_peak_sits_on_the_resonance(unit_params):
    grid = np.linspace(-3.0, 3.0, 6001)
    spectrum = emission_spectrum(unit_params, Pathway.GEG, Channel.RR, grid, epsilon=0.01)
    omega, _ = spectrum.peak("GEG_RR")
    assert abs(omega - 1.0) <= grid[1] - grid[0]


def test_ege_rr_peak_sits_at_negative_resonance(unit_params):
    grid = np.linspace(-3.0, 3.0, 6001)
    spectrum = emission_spectrum(unit_params, Pathway.EGE, Channel.RR, grid, epsilon=0.01)
    omega, _ = spectrum.peak("EGE_RR")
    assert abs(omega + 1.0) <= grid[1] - grid[0]


def test_default_epsilon_peak_within_two_epsilon(unit_params):
    spectra = emission_spectra(unit_params, epsilon=0.05)
    omega, _ = spectra.peak("GEG_RR")
    assert abs(omega - 1.0) <= 0.1


@pytest.mark.parametrize("ratio", [0.5, 1.0, 2.0])
def test_dominance_table(ratio):
    spectra = emission_spectra(DetectorParams(omega=ratio, accel=1.0), epsilon=0.05)
    assert dominance_table(spectra) == DOMINANT_SIGNS


def test_peak_heights_of_mirrored_pathways_agree(unit_params):
    spectra = emission_spectra(unit_params, epsilon=0.05)
    _, geg = spectra.peak("GEG_RR", positive_only=True)
    _, ege = spectra.peak("EGE_LL", positive_only=True)
    assert geg == pytest.approx(ege, rel=1e-10)


def test_all_six_spectra_are_finite(unit_params):
    spectra = emission_spectra(unit_params, np.linspace(-2.0, 2.0, 9), epsilon=0.05)
    assert len(spectra.values) == 6
    assert 1.0 in spectra.omegas and -1.0 in spectra.omegas
    for values in spectra.values.values():
        assert np.all(np.isfinite(values)) and np.all(values >= 0)


def test_peak_height_scales_as_inverse_epsilon_squared(unit_params):
    grid = np.linspace(0.5, 1.5, 10001)
    heights = [emission_spectrum(unit_params, Pathway.GEG, Channel.RR, grid, eps).peak("GEG_RR")[1]
               for eps in (0.1, 0.05, 0.025)]
    assert heights[1] / heights[0] == pytest.approx(4.0, rel=0.05)
    assert heights[2] / heights[1] == pytest.approx(4.0, rel=0.02)


def test_rl_spectrum_peaks_at_both_resonances(unit_params):
    grid = np.array([-1.2, -1.0, -0.8, 0.8, 1.0, 1.2])
    values = emission_spectrum(unit_params, Pathway.GEG, Channel.RL, grid, 0.05)["GEG_RL"]
    assert values[1] > max(values[0], values[2])
    assert values[4] > max(values[3], values[5])


@pytest.mark.parametrize("epsilon", [0.0, -0.1])
def test_non_positive_epsilon_rejected(unit_params, epsilon):
    with pytest.raises(ConfigurationError):
        emission_spectrum(unit_params, Pathway.GEG, Channel.RR, [0.0, 1.0], epsilon)


@pytest.mark.parametrize("grid", [[], [0.0, np.inf], [1.0, 0.5]])
def test_bad_grids_rejected(unit_params, grid):
    with pytest.raises(ConfigurationError):
        emission_spectrum(unit_params, Pathway.GEG, Channel.RR, grid, 0.05)


@pytest.mark.parametrize("ratio", [0.5, 1.0, 2.0])
def test_integrated_rr_equals_ll(ratio):
    params = DetectorParams(omega=ratio, accel=1.0)
    for pathway in Pathway:
        rr = integrated_channel_probability(params, pathway, Channel.RR)
        ll = integrated_channel_probability(params, pathway, Channel.LL)
        assert rr == pytest.approx(ll, rel=1e-8)


def test_integrated_pathways_cross_match(unit_params):
    ege_rr = integrated_channel_probability(unit_params, Pathway.EGE, Channel.RR)
    geg_ll = integrated_channel_probability(unit_params, Pathway.GEG, Channel.LL)
    assert ege_rr == pytest.approx(geg_ll, rel=1e-8)


def test_integrated_probability_scales_as_g_to_the_fourth(unit_params):
    base = integrated_channel_probability(unit_params, Pathway.GEG, Channel.RL)
    doubled = integrated_channel_probability(unit_params.model_copy(update={"coupling": 2.0}),
                                             Pathway.GEG, Channel.RL)
    assert doubled == pytest.approx(16.0 * base, rel=1e-13)


def test_integrated_probability_rejects_short_cutoff(unit_params):
    with pytest.raises(ConfigurationError, match="tail cutoff"):
        integrated_channel_probability(unit_params, Pathway.GEG, Channel.RR,
                                       config=PVConfig(tail_cutoff=5.0))
