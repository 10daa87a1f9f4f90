import logging
import math
from collections.abc import Callable

import numpy as np

from histopolation.domains.models import Domain
from histopolation.helpers.integrate import adaptive_nquad, adaptive_quad

log = logging.getLogger(__name__)

AVERAGE_TOLERANCE = 1e-10


def _sphere_point(center: np.ndarray, rho: float, angles: tuple[float, ...]) -> tuple[np.ndarray, float]:
    """Hyperspherical coordinates: point and angular part of the volume element."""
    dim = len(center)
    direction = np.ones(dim)
    jacobian = 1.0
    sine = 1.0
    for index, angle in enumerate(angles):
        direction[index] = sine * math.cos(angle)
        if index < dim - 2:
            jacobian *= math.sin(angle) ** (dim - 2 - index)
        sine *= math.sin(angle)
    direction[dim - 1] = sine
    return center + rho * direction, jacobian


def average_of(func: Callable[..., float], domain: Domain, tol: float = AVERAGE_TOLERANCE) -> float:
    """Mean value of ``func`` over ``domain``.

    ``func`` is called with one float per coordinate, ``func(x1, ..., xd)``.
    Boxes are integrated axis by axis, balls in polar coordinates.
    """
    if domain.dim == 1 and not domain.is_ball:
        lower, upper = float(domain.lower[0]), float(domain.upper[0])
        return adaptive_quad(lambda x: float(func(x)), lower, upper, tol=tol) / (upper - lower)
    if not domain.is_ball:
        ranges = list(zip(domain.lower.tolist(), domain.upper.tolist()))
        value, estimate = adaptive_nquad(lambda *x: float(func(*x)), ranges, tol=tol)
        log.debug("Box average with error estimate %.3e", estimate)
        return value / domain.measure()
    return _ball_average(func, domain, tol)


def _ball_average(func: Callable[..., float], domain: Domain, tol: float) -> float:
    center = np.asarray(domain.center)
    dim = domain.dim
    if dim == 1:
        lower, upper = center[0] - domain.radius, center[0] + domain.radius
        return adaptive_quad(lambda x: float(func(x)), lower, upper, tol=tol) / (upper - lower)

    def integrand(*args: float) -> float:
        rho, angles = args[0], args[1:]
        point, jacobian = _sphere_point(center, rho, angles)
        return float(func(*point)) * rho ** (dim - 1) * jacobian

    ranges = [(0.0, domain.radius)] + [(0.0, math.pi)] * (dim - 2) + [(0.0, 2.0 * math.pi)]
    value, estimate = adaptive_nquad(integrand, ranges, tol=tol)
    log.debug("Ball average with error estimate %.3e", estimate)
    return value / domain.measure()
