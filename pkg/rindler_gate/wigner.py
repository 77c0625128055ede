"""
Single-mode reduced states of the resonant photon pair and their Wigner
functions.

Phase-space convention: a = (x + i p) / sqrt(2), hbar = 1, and W is
normalised to int W dx dp = 1. For a density matrix rho in the Fock basis

    W = e^{-r^2} / pi * [ sum_m rho_mm (-1)^m L_m(2 r^2)
        + 2 sum_{m<n} Re( rho_mn (-1)^m sqrt(m!/n!) (sqrt(2)(x + i p))^{n-m} L_m^{(n-m)}(2 r^2) ) ]

with r^2 = x^2 + p^2 and generalised Laguerre polynomials L.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from .errors import ConfigurationError
from .resonance import ResonantState

logger = logging.getLogger(__name__)

MODES = ("A+", "A-", "B+", "B-")

# Mode pair of each resonant term, as indices into MODES
TERM_MODES = {
    "A+A-": (0, 1),
    "B+B-": (2, 3),
    "A+B+": (0, 2),
    "A-B-": (1, 3),
}

DEFAULT_PARTNERS = {"A+": "A-", "A-": "A+", "B+": "B-", "B-": "B+"}

CONDITIONINGS = ("none", "partner_detected")

MAX_FOCK_DIM = 64
HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FockDensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise ConfigurationError(f"density matrix must be square with dim >= 2, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
            raise ConfigurationError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > TRACE_TOLERANCE:
            raise ConfigurationError(f"density matrix trace is {np.trace(rho).real}, not 1")
        if np.min(np.linalg.eigvalsh(rho)) < -PSD_TOLERANCE:
            raise ConfigurationError("density matrix is not positive semidefinite")
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def fock(cls, n: int, dim: Optional[int] = None) -> "FockDensityMatrix":
        """|n><n| in a space of max(dim, n + 1) levels"""
        size = max(dim or 2, n + 1, 2)
        rho = np.zeros((size, size), dtype=complex)
        rho[n, n] = 1.0
        return cls(rho)

    @classmethod
    def diagonal(cls, populations: Sequence[float]) -> "FockDensityMatrix":
        return cls(np.diag(np.asarray(populations, dtype=complex)))


@dataclass(frozen=True)
class WignerGrid:
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray  # values[ix, ip]

    def cell_area(self) -> float:
        dx = (self.x_axis[-1] - self.x_axis[0]) / (len(self.x_axis) - 1)
        dp = (self.p_axis[-1] - self.p_axis[0]) / (len(self.p_axis) - 1)
        return float(dx * dp)

    def normalization(self) -> float:
        return float(np.sum(self.values) * self.cell_area())

    def at(self, x: float, p: float) -> float:
        """Value at the grid node nearest to (x, p)"""
        ix = int(np.argmin(np.abs(self.x_axis - x)))
        ip = int(np.argmin(np.abs(self.p_axis - p)))
        return float(self.values[ix, ip])


def default_axis(points: int = 201, extent: float = 5.0) -> np.ndarray:
    return np.linspace(-extent, extent, points)


# ---------------------------------------------------------------------------
# Reduced states of the resonant pair
# ---------------------------------------------------------------------------

def resonant_fock_tensor(res: ResonantState) -> np.ndarray:
    """Normalised four-mode state psi[n_A+, n_A-, n_B+, n_B-], one photon per paired mode"""
    psi = np.zeros((2, 2, 2, 2), dtype=complex)
    for label, (first, second) in TERM_MODES.items():
        index = [0, 0, 0, 0]
        index[first] = 1
        index[second] = 1
        psi[tuple(index)] += res.terms[label]
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ConfigurationError("resonant state has no weight")
    return psi / norm


def _mode_index(mode: str) -> int:
    try:
        return MODES.index(mode)
    except ValueError:
        raise ConfigurationError(f"unknown mode {mode!r}; expected one of {MODES}")


def reduced_state(res: ResonantState, target_mode: str, conditioning: str = "none",
                  partner: Optional[str] = None) -> FockDensityMatrix:
    """Single-mode state of ``target_mode``.

    ``none`` traces out the other three modes. ``partner_detected`` projects
    one photon onto ``partner`` (default: the other mode of the same
    direction) and vacuum onto the remaining two modes.
    """
    target = _mode_index(target_mode)
    psi = resonant_fock_tensor(res)
    others = [k for k in range(len(MODES)) if k != target]

    if conditioning == "none":
        rho = np.tensordot(psi, psi.conj(), axes=(others, others))
        return FockDensityMatrix(rho)
    if conditioning != "partner_detected":
        raise ConfigurationError(
            f"unknown conditioning {conditioning!r}; expected one of {CONDITIONINGS}")

    partner = partner or DEFAULT_PARTNERS[target_mode]
    partner_index = _mode_index(partner)
    if partner_index == target:
        raise ConfigurationError("partner mode must differ from the target mode")
    index = [0, 0, 0, 0]
    index[partner_index] = 1
    index[target] = slice(None)
    conditioned = psi[tuple(index)]
    probability = float(np.vdot(conditioned, conditioned).real)
    if probability == 0.0:
        raise ConfigurationError(
            f"detecting a photon in {partner} has zero probability for target {target_mode}")
    logger.debug("conditioning %s on %s: probability %.6g", target_mode, partner, probability)
    return FockDensityMatrix(np.outer(conditioned, conditioned.conj()) / probability)


# ---------------------------------------------------------------------------
# Wigner functions
# ---------------------------------------------------------------------------

def wigner_of_fock_mixture(rho: FockDensityMatrix, x_axis: Optional[Sequence[float]] = None,
                           p_axis: Optional[Sequence[float]] = None) -> WignerGrid:
    if rho.dim > MAX_FOCK_DIM:
        raise ConfigurationError(f"Fock dimension {rho.dim} exceeds the supported {MAX_FOCK_DIM}")
    xs = default_axis() if x_axis is None else np.asarray(x_axis, dtype=float)
    ps = default_axis() if p_axis is None else np.asarray(p_axis, dtype=float)
    x, p = np.meshgrid(xs, ps, indexing="ij")
    r2 = x ** 2 + p ** 2
    z = np.sqrt(2.0) * (x + 1j * p)
    entries = rho.entries

    total = np.zeros_like(r2)
    for m in range(rho.dim):
        sign = -1.0 if m % 2 else 1.0
        if entries[m, m] != 0:
            total += entries[m, m].real * sign * eval_genlaguerre(m, 0, 2.0 * r2)
        for n in range(m + 1, rho.dim):
            if entries[m, n] == 0:
                continue
            scale = np.exp(0.5 * (gammaln(m + 1) - gammaln(n + 1)))
            term = entries[m, n] * sign * scale * z ** (n - m) * eval_genlaguerre(m, n - m, 2.0 * r2)
            total += 2.0 * term.real
    values = np.exp(-r2) / np.pi * total
    return WignerGrid(x_axis=xs, p_axis=ps, values=values)


def fock_wigner(n: int, x_axis: Optional[Sequence[float]] = None,
                p_axis: Optional[Sequence[float]] = None) -> WignerGrid:
    """W of the number state |n>: (-1)^n / pi e^{-r^2} L_n(2 r^2)"""
    return wigner_of_fock_mixture(FockDensityMatrix.fock(n), x_axis, p_axis)


def negativity_volume(grid: WignerGrid) -> float:
    """Sum of max(0, -W) dx dp"""
    return float(np.sum(np.clip(-grid.values, 0.0, None)) * grid.cell_area())


def origin_parity(rho: FockDensityMatrix) -> float:
    """W(0, 0) = (1/pi) sum_n (-1)^n rho_nn"""
    signs = np.where(np.arange(rho.dim) % 2, -1.0, 1.0)
    return float(np.dot(signs, np.diag(rho.entries).real) / np.pi)


def fock_one_negativity() -> float:
    """Exact negative volume of |1><1|: int_0^{1/2} e^{-u}(1 - 2u) du = 2 e^{-1/2} - 1"""
    return float(2.0 * np.exp(-0.5) - 1.0)


def state_summary(rho: FockDensityMatrix) -> Dict[str, float]:
    return {
        "trace": float(np.trace(rho.entries).real),
        "purity": float(np.trace(rho.entries @ rho.entries).real),
        "mean_photons": float(np.dot(np.arange(rho.dim), np.diag(rho.entries).real)),
    }
