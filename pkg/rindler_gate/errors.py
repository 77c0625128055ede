"""
Exception types raised by rindler-gate
"""

from typing import Optional


class RindlerGateError(Exception):
    """Base class for every numerical or configuration failure in the package"""


class DomainError(RindlerGateError, ValueError):
    """A function was evaluated outside the set where it is defined"""


class ConfigurationError(RindlerGateError, ValueError):
    """Invalid integrator, grid, cutoff or conditioning settings"""


class PoleError(RindlerGateError, ValueError):
    """Exact (unregularized) evaluation landed on a simple pole.

    Attributes:
        pole: location of the pole on the Unruh-frequency axis
        pathway: pathway tag when known ("GEG" / "EGE")
        channel: channel tag when known ("RR" / "LL" / "RL")
    """

    def __init__(self, pole: float, pathway: Optional[str] = None,
                 channel: Optional[str] = None):
        self.pole = pole
        self.pathway = pathway
        self.channel = channel
        where = "/".join(tag for tag in (pathway, channel) if tag)
        label = f" ({where})" if where else ""
        super().__init__(f"amplitude{label} has a pole at Omega = {pole!r}")


class TruncationWarning(UserWarning):
    """The integrand is still non-negligible at the tail cutoff"""
