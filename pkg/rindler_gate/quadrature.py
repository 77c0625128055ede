"""
Composite Gauss-Legendre panels graded towards real poles.

Breakpoints double in distance away from each pole, starting at an inner
radius (the PV excision half-width, or a fraction of epsilon for the
+i epsilon route), and wide gaps are split into panels no wider than
``max_width``. Sums run left to right over the sorted panels so results
do not depend on evaluation order.
"""

import logging
from functools import lru_cache
from typing import Callable, Iterable, List, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_MAX_WIDTH = 0.5


@lru_cache(maxsize=32)
def reference_rule(points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], symmetrised exactly"""
    nodes, weights = leggauss(points)
    # leggauss is symmetric to rounding; force it so odd kernels cancel
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _one_side(pole: float, reach: float, inner: float, direction: int) -> List[float]:
    points = []
    radius = inner
    while radius < reach:
        points.append(pole + direction * radius)
        radius *= 2.0
    return points


def graded_breakpoints(lower: float, upper: float, poles: Iterable[float],
                       inner: float, max_width: float = DEFAULT_MAX_WIDTH) -> np.ndarray:
    """Sorted panel edges on [lower, upper] with geometric grading at each pole.

    Every pole p gets the edges p - inner and p + inner, so the panel
    [p - inner, p + inner] is symmetric about the pole.
    """
    if not lower < upper:
        raise ConfigurationError(f"empty integration interval [{lower}, {upper}]")
    if inner <= 0:
        raise ConfigurationError(f"inner radius must be positive, got {inner}")
    ordered = sorted(poles)
    edges = [lower, upper]
    for index, pole in enumerate(ordered):
        left_reach = pole - lower
        right_reach = upper - pole
        if index > 0:
            left_reach = min(left_reach, 0.5 * (pole - ordered[index - 1]))
        if index + 1 < len(ordered):
            right_reach = min(right_reach, 0.5 * (ordered[index + 1] - pole))
        if left_reach <= inner or right_reach <= inner:
            raise ConfigurationError(
                f"pole at {pole} is within {inner} of a bound or another pole")
        edges.extend(_one_side(pole, left_reach, inner, -1))
        edges.extend(_one_side(pole, right_reach, inner, +1))
        edges.extend([pole - left_reach, pole + right_reach])

    edges = np.unique(np.asarray(edges, dtype=float))
    refined = [edges[:1]]
    for left, right in zip(edges[:-1], edges[1:]):
        pieces = int(np.ceil((right - left) / max_width))
        if pieces > 1:
            refined.append(np.linspace(left, right, pieces + 1)[1:])
        else:
            refined.append(np.array([right]))
    return np.concatenate(refined)


def panel_nodes(breakpoints: np.ndarray, points: int) -> Tuple[np.ndarray, np.ndarray]:
    """All quadrature nodes and weights for consecutive panels, in order"""
    reference_nodes, reference_weights = reference_rule(points)
    left = breakpoints[:-1, None]
    right = breakpoints[1:, None]
    half = 0.5 * (right - left)
    centre = 0.5 * (right + left)
    nodes = centre + half * reference_nodes[None, :]
    weights = half * reference_weights[None, :]
    return nodes.ravel(), weights.ravel()


def integrate_panels(f: Callable[[np.ndarray], np.ndarray], breakpoints: np.ndarray,
                     points: int) -> complex:
    """Integrate a vectorised f over the given panels"""
    nodes, weights = panel_nodes(breakpoints, points)
    logger.debug("integrating over %d panels, %d nodes", len(breakpoints) - 1, nodes.size)
    values = np.asarray(f(nodes))
    return complex(np.dot(weights, values))


def symmetric_interval(cutoff: float, poles: Iterable[float], inner: float,
                       max_width: float = DEFAULT_MAX_WIDTH) -> np.ndarray:
    """Breakpoints on [-cutoff, cutoff] that are mirror images under x -> -x.

    Poles are mirrored too, so an integrand and its reflection see the
    same panels and integrate to the same value up to rounding.
    """
    magnitudes = sorted({abs(float(pole)) for pole in poles})
    if magnitudes and magnitudes[0] == 0.0:
        raise ConfigurationError("symmetric panels need poles away from 0")
    right = graded_breakpoints(0.0, cutoff, magnitudes, inner, max_width)
    return np.concatenate([-right[:0:-1], right])
