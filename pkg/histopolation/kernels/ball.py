"""Radial averaging kernels over d-dimensional balls.

The average of ``phi(|x|)`` over a ball of radius ``a`` centered at distance ``r`` from the
origin is a one-dimensional integral over ``rho = |x|``, weighted by the fraction of the
sphere of radius ``rho`` inside the ball. That fraction is a spherical cap whose area is
``I_{1 - cos^2}((d - 1)/2, 1/2) / 2`` of the full sphere.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike

from histopolation.errors import ValidationError
from histopolation.helpers.integrate import adaptive_quad
from histopolation.kernels.profiles import RadialProfile
from histopolation.kernels.special import reg_inc_beta

log = logging.getLogger(__name__)

MIN_DIM = 2
MAX_DIM = 10
ALPHA_TOLERANCE = 1e-12
KAPPA_TOLERANCE = 1e-9


def validate_dim(dim: int) -> int:
    if isinstance(dim, bool) or int(dim) != dim or not MIN_DIM <= dim <= MAX_DIM:
        raise ValidationError(f"Ball kernels support dimensions {MIN_DIM} to {MAX_DIM}, got {dim}")
    return int(dim)


def _cap_fraction(dim: int, rho: float, r: float, a: float) -> float:
    """``I_{1-c^2}((d-1)/2, 1/2)`` with ``c`` the cosine of the cap's polar angle."""
    cosine = (rho * rho + r * r - a * a) / (2.0 * rho * r)
    cosine = min(1.0, max(-1.0, cosine))
    return float(reg_inc_beta(1.0 - cosine * cosine, 0.5 * (dim - 1), 0.5))


def spherical_average(func: Callable[[float], float], dim: int, a: float, r: float, tol: float = ALPHA_TOLERANCE) -> float:
    """Mean of ``func(|x|)`` over the ball of radius ``a`` centered at distance ``r``."""
    if r < 0:
        raise ValidationError(f"Radial distance must be nonnegative, got {r}")
    scale = dim / a**dim

    def radial(rho: float) -> float:
        return func(rho) * rho ** (dim - 1)

    if r == 0.0:
        return scale * adaptive_quad(radial, 0.0, a, tol=tol)

    def outer_cap(rho: float) -> float:
        if rho == 0.0:
            return 0.0
        return radial(rho) * _cap_fraction(dim, rho, r, a)

    def inner_cap(rho: float) -> float:
        return radial(rho) * (1.0 - 0.5 * _cap_fraction(dim, rho, r, a))

    if r >= a:
        return 0.5 * scale * adaptive_quad(outer_cap, r - a, r + a, tol=tol)
    transition = math.sqrt((a - r) * (a + r))
    full = adaptive_quad(radial, 0.0, a - r, tol=tol)
    middle = adaptive_quad(inner_cap, a - r, transition, tol=tol)
    outer = adaptive_quad(outer_cap, transition, r + a, tol=tol)
    return scale * (full + middle + 0.5 * outer)


@dataclass(frozen=True)
class BallAveragedKernel:
    """Averaging kernel ``alpha(|x - y|)`` and reproducing kernel ``kappa(|x - y|)`` for balls of radius ``a``."""

    dim: int
    radius: float
    profile: RadialProfile

    def __post_init__(self):
        validate_dim(self.dim)
        if not self.radius > 0:
            raise ValidationError(f"Ball radius must be positive, got {self.radius}")

    @property
    def name(self) -> str:
        return f"ball:{self.profile.name}:{self.dim}"

    @property
    def width(self) -> float:
        return self.radius

    def _phi(self, rho: float) -> float:
        return float(self.profile.phi(rho))

    def alpha_at(self, r: float) -> float:
        return _cached_alpha(self, float(r))

    def kappa_at(self, r: float) -> float:
        return _cached_kappa(self, float(r))

    def alpha(self, r: ArrayLike) -> np.ndarray | float:
        return _map_radii(self.alpha_at, r)

    def kappa(self, r: ArrayLike) -> np.ndarray | float:
        return _map_radii(self.kappa_at, r)


@lru_cache(maxsize=4096)
def _cached_alpha(kernel: BallAveragedKernel, r: float) -> float:
    return spherical_average(kernel._phi, kernel.dim, kernel.radius, r)


@lru_cache(maxsize=1024)
def _cached_kappa(kernel: BallAveragedKernel, r: float) -> float:
    log.debug("Re-averaging ball alpha at r=%s (d=%s)", r, kernel.dim)
    return spherical_average(kernel.alpha_at, kernel.dim, kernel.radius, r, tol=KAPPA_TOLERANCE)


def _map_radii(func: Callable[[float], float], r: ArrayLike) -> np.ndarray | float:
    radii = np.abs(np.asarray(r, dtype=np.float64))
    values = np.array([func(float(value)) for value in radii.ravel()]).reshape(radii.shape)
    return float(values) if values.ndim == 0 else values


def ball_alpha(kernel: BallAveragedKernel, r: float) -> float:
    """Mean of the radial profile over the ball of radius ``kernel.width`` at distance ``r``."""
    if r < 0:
        raise ValidationError(f"Distance must be nonnegative, got {r}")
    return kernel.alpha_at(r)
