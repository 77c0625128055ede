import math

import numpy as np
import pytest

from rindler_gate.amplitudes import (amplitude_array, branch_amplitude, channel_amplitude,
                                     omega_flip_check, pole_residues, sinh_envelope,
                                     superposed_amplitude, unruh_norm)
from rindler_gate.errors import DomainError, PoleError
from rindler_gate.models import Channel, DetectorParams, Pathway, QubitState


def test_unruh_norm_matches_closed_form():
    expected = math.exp(-math.pi / 2) / math.sqrt(8 * math.pi * math.sinh(math.pi))
    assert unruh_norm(1.0) == pytest.approx(expected, rel=1e-12)


def test_unruh_norm_negative_frequency():
    assert unruh_norm(-1.0) == pytest.approx(math.exp(math.pi) * unruh_norm(1.0), rel=1e-12)
    assert unruh_norm(-2.5) > 0


@pytest.mark.parametrize("value", [0.0, float("inf"), float("nan")])
def test_unruh_norm_domain(value):
    with pytest.raises(DomainError):
        unruh_norm(value)


def test_unruh_norm_large_frequency_does_not_overflow():
    assert 0 < unruh_norm(100.0) < 1e-100


def test_sinh_envelope_origin_and_tail():
    values = sinh_envelope([0.0, 1e-9, 500.0])
    assert values[0] == pytest.approx(1 / math.pi)
    assert values[1] == pytest.approx(1 / math.pi, rel=1e-12)
    assert values[2] == 0.0


def test_geg_rr_worked_example(unit_params):
    value = channel_amplitude(unit_params, Pathway.GEG, Channel.RR, 2.0)
    expected = -1j / (2 * math.sinh(2 * math.pi))
    assert value.real == pytest.approx(0.0, abs=1e-18)
    assert value.imag == pytest.approx(expected.imag, rel=1e-12)


@pytest.mark.parametrize("pathway,channel,expected", [
    (Pathway.GEG, Channel.RR, 1j / (4 * math.pi)),
    (Pathway.GEG, Channel.LL, 1j / (4 * math.pi)),
    (Pathway.EGE, Channel.RR, -1j / (4 * math.pi)),
    (Pathway.GEG, Channel.RL, 1j / (2 * math.pi)),
])
def test_origin_takes_the_removable_limit(unit_params, pathway, channel, expected):
    value = channel_amplitude(unit_params, pathway, channel, 0.0)
    assert value == pytest.approx(expected, rel=1e-12)
    nearby = channel_amplitude(unit_params, pathway, channel, 1e-8)
    assert nearby == pytest.approx(value, rel=1e-6)


@pytest.mark.parametrize("pathway,channel,expected", [
    (Pathway.GEG, Channel.RR, 1j / (8 * math.pi)),
    (Pathway.GEG, Channel.RL, 1j / (4 * math.pi)),
    (Pathway.EGE, Channel.RL, -1j / (4 * math.pi)),
])
def test_origin_limit_scales_inversely_with_gap(pathway, channel, expected):
    params = DetectorParams(omega=2.0, accel=1.0)
    assert channel_amplitude(params, pathway, channel, 0.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("pathway,channel,pole", [
    (Pathway.GEG, Channel.RR, 1.0),
    (Pathway.GEG, Channel.LL, -1.0),
    (Pathway.EGE, Channel.RR, -1.0),
    (Pathway.EGE, Channel.RL, 1.0),
])
def test_pole_error_carries_location(unit_params, pathway, channel, pole):
    with pytest.raises(PoleError) as info:
        channel_amplitude(unit_params, pathway, channel, pole)
    assert info.value.pole == pole
    assert info.value.channel == channel.value
    assert isinstance(info.value, ValueError)


def test_amplitude_array_rejects_grid_through_pole(unit_params):
    with pytest.raises(PoleError):
        amplitude_array(unit_params, Pathway.GEG, Channel.RR, np.linspace(0, 2, 5))


@pytest.mark.parametrize("ratio,channel,omega", [
    (0.5, Channel.RR, 1.7),
    (2.0, Channel.LL, -0.3),
    (1.0, Channel.RL, 0.4),
])
def test_omega_flip_examples(ratio, channel, omega):
    params = DetectorParams(omega=ratio * 1.3, accel=1.3)
    excited, flipped = omega_flip_check(params, channel, omega)
    assert abs(excited - flipped) <= 1e-13 * abs(excited)


def test_omega_flip_at_pole(unit_params):
    with pytest.raises(PoleError):
        omega_flip_check(unit_params, Channel.RR, -1.0)


def test_rr_ll_mirror():
    params = DetectorParams(omega=0.7, accel=1.9)
    grid = np.array([-3.1, -1.2, -0.2, 0.5, 0.9, 2.4])
    for pathway in Pathway:
        rr = amplitude_array(params, pathway, Channel.RR, grid)
        ll = amplitude_array(params, pathway, Channel.LL, -grid)
        np.testing.assert_allclose(np.abs(rr), np.abs(ll), rtol=1e-14)


def test_rl_phase_product_is_squared_prefactor_phase():
    params = DetectorParams(omega=1.0, accel=2.0)
    grid = np.array([0.3, 0.7, 1.6, 2.2])
    product = (amplitude_array(params, Pathway.GEG, Channel.RL, grid)
               * amplitude_array(params, Pathway.GEG, Channel.RL, -grid))
    # (+i)^2 = -1: the product is real and negative
    assert np.all(product.real < 0)
    np.testing.assert_allclose(product.imag, 0.0, atol=1e-14 * np.max(np.abs(product)))


def test_rl_carries_acceleration_phase():
    params = DetectorParams(omega=2.0, accel=2.0)
    value = channel_amplitude(params, Pathway.GEG, Channel.RL, 0.5)
    flat = channel_amplitude(params.model_copy(update={"accel": 1.0, "omega": 1.0}),
                             Pathway.GEG, Channel.RL, 0.5)
    assert value / flat == pytest.approx(np.exp(1j * math.log(2.0)), rel=1e-12)


def test_coupling_scales_quadratically(unit_params):
    doubled = unit_params.model_copy(update={"coupling": 2.0})
    for channel in Channel:
        base = channel_amplitude(unit_params, Pathway.EGE, channel, 0.37)
        assert channel_amplitude(doubled, Pathway.EGE, channel, 0.37) == 4 * base


def test_zero_coupling_gives_zero(unit_params):
    silent = unit_params.model_copy(update={"coupling": 0.0})
    assert channel_amplitude(silent, Pathway.GEG, Channel.RL, 0.4) == 0


def test_superposed_pure_inputs(unit_params):
    ground_only = superposed_amplitude(unit_params, QubitState(alpha=1, beta=0), Channel.RR, 2.0)
    assert ground_only[0] == channel_amplitude(unit_params, Pathway.GEG, Channel.RR, 2.0)
    assert ground_only[1] == 0

    excited_only = superposed_amplitude(unit_params, QubitState(alpha=0, beta=1), Channel.RR, 2.0)
    assert excited_only[0] == 0
    assert excited_only[1] == pytest.approx(
        channel_amplitude(unit_params, Pathway.EGE, Channel.RR, 2.0), rel=1e-15)


def test_superposed_equal_weights(unit_params, equal_qubit):
    ground, excited = superposed_amplitude(unit_params, equal_qubit, Channel.RR, 2.0)
    root = math.sqrt(0.5)
    assert ground == pytest.approx(root * -1j / (2 * math.sinh(2 * math.pi)), rel=1e-12)
    # EGE RR at Omega = 2: -i/4 * (2 / sinh 2 pi) / 3
    assert excited == pytest.approx(root * -1j / (6 * math.sinh(2 * math.pi)), rel=1e-12)


def test_branch_amplitude_flips_ege_sign(unit_params):
    grid = np.array([0.4, 2.5])
    np.testing.assert_array_equal(branch_amplitude(unit_params, Pathway.EGE, Channel.LL, grid),
                                  -amplitude_array(unit_params, Pathway.EGE, Channel.LL, grid))


def test_residues_match_limit(unit_params):
    residues = pole_residues(unit_params, Pathway.GEG, Channel.RL)
    assert sorted(residues) == [-1.0, 1.0]
    for pole, residue in residues.items():
        step = 1e-7
        near = channel_amplitude(unit_params, Pathway.GEG, Channel.RL, pole + step)
        assert near * step == pytest.approx(residue, rel=1e-5)
