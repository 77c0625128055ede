"""
rindler-gate: exact two-photon emission amplitudes of a uniformly
accelerated two-level detector, the resonant (Z-gate) part of the final
state, and the spectra, interference maps, Wigner witness and Ramsey
fringes derived from them.
"""

from .amplitudes import channel_amplitude, superposed_amplitude, unruh_norm
from .errors import (ConfigurationError, DomainError, PoleError, RindlerGateError,
                     TruncationWarning)
from .interference import interference_map, sweet_spot_scan
from .models import Channel, DetectorParams, Pathway, PVConfig, QubitState, RamseyConfig
from .ramsey import fringe_visibility, ramsey_fringe
from .resonance import pv_integrate, pv_state_coefficients, resonant_state
from .spectra import emission_spectrum
from .wigner import negativity_volume, reduced_state, wigner_of_fock_mixture

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "ConfigurationError",
    "DetectorParams",
    "DomainError",
    "PVConfig",
    "Pathway",
    "PoleError",
    "QubitState",
    "RamseyConfig",
    "RindlerGateError",
    "TruncationWarning",
    "channel_amplitude",
    "emission_spectrum",
    "fringe_visibility",
    "interference_map",
    "negativity_volume",
    "pv_integrate",
    "pv_state_coefficients",
    "ramsey_fringe",
    "reduced_state",
    "resonant_state",
    "superposed_amplitude",
    "sweet_spot_scan",
    "unruh_norm",
    "wigner_of_fock_mixture",
]
