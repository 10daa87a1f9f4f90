import logging
from collections.abc import Callable, Sequence

import numpy as np
from scipy.integrate import nquad, quad

from histopolation.errors import NumericFailureError

log = logging.getLogger(__name__)

QUAD_LIMIT = 200
FAIL_TOLERANCE = 1e-8


def adaptive_quad(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float = 1e-12,
    points: Sequence[float] | None = None,
    fail_tol: float = FAIL_TOLERANCE,
) -> float:
    """Adaptive Gauss–Kronrod integral of ``func`` over ``[lower, upper]``.

    ``tol`` is the requested accuracy. QUADPACK warnings are tolerated while the
    error estimate stays below ``fail_tol``; beyond that ``NumericFailureError``
    carries the achieved estimate.
    """
    if upper <= lower:
        return 0.0
    inner = None
    if points is not None:
        inner = [point for point in points if lower < point < upper] or None
    result = quad(func, lower, upper, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT, points=inner, full_output=1)
    value, estimate = result[0], result[1]
    if len(result) > 3:
        if estimate > fail_tol:
            raise NumericFailureError(f"Quadrature over [{lower}, {upper}] did not converge", estimate=estimate)
        log.debug("Quadrature over [%s, %s]: %s", lower, upper, result[3].splitlines()[0])
    return float(value)


def adaptive_nquad(
    func: Callable[..., float],
    ranges: Sequence[tuple[float, float] | Callable[..., tuple[float, float]]],
    tol: float = 1e-10,
    fail_tol: float = FAIL_TOLERANCE,
) -> tuple[float, float]:
    value, estimate = nquad(func, ranges, opts={"epsabs": tol, "epsrel": tol, "limit": QUAD_LIMIT})
    if estimate > fail_tol:
        raise NumericFailureError("Cubature did not converge", estimate=estimate)
    return float(value), float(estimate)


def gauss_legendre(lower: float, upper: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre nodes on ``[lower, upper]`` with weights normalized to sum to 1."""
    points, weights = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * (upper - lower)
    return lower + half * (points + 1.0), 0.5 * weights


def cosine_quad(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    frequency: float,
    tol: float = 1e-12,
    fail_tol: float = FAIL_TOLERANCE,
) -> float:
    """``int func(x) cos(frequency x) dx`` over a finite interval (QUADPACK's oscillatory rule)."""
    if upper <= lower:
        return 0.0
    if frequency == 0.0:
        return adaptive_quad(func, lower, upper, tol=tol, fail_tol=fail_tol)
    result = quad(func, lower, upper, weight="cos", wvar=frequency, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT, full_output=1)
    value, estimate = result[0], result[1]
    if len(result) > 3 and estimate > fail_tol:
        raise NumericFailureError(f"Cosine transform at s={frequency} did not converge", estimate=estimate)
    return float(value)
