"""Univariate averaging kernels alpha and associated reproducing kernels kappa.

For a segment of length ``a`` the averaging kernel is ``A(x, y) = alpha(x - y)`` and
the reproducing kernel ``K(x, y) = kappa(x - y)`` with

    alpha = phi * (1/a) chi_[-a/2, a/2]
    kappa = alpha * (1/a) chi_[-a/2, a/2]

Closed forms follow from symmetric finite differences of the anti-derivatives of phi.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike

from histopolation.errors import UnsupportedConstructionError, ValidationError
from histopolation.helpers.integrate import adaptive_quad
from histopolation.kernels.bspline import bspline_central, validate_order
from histopolation.kernels.profiles import (
    RadialProfile,
    RealFunction,
    inverse_multiquadric_profile,
    inverse_quadratic_profile,
    matern_profile,
    mexican_hat_profile,
)

log = logging.getLogger(__name__)


class KernelSource(StrEnum):
    CLOSED_FORM = "closed-form"
    ANTIDERIVATIVE = "antiderivative"
    QUADRATURE = "quadrature"


def _as_array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def _scalar_or_array(values: np.ndarray) -> np.ndarray | float:
    if values.ndim == 0:
        return float(values)
    return values


def validate_width(width: float) -> float:
    if not width > 0:
        raise ValidationError(f"Averaging width must be positive, got {width}")
    return float(width)


@dataclass(frozen=True)
class AveragedKernelPair:
    """Averaging profile ``alpha`` and reproducing profile ``kappa`` for width ``a``."""

    name: str
    width: float
    alpha_function: RealFunction = field(repr=False)
    kappa_function: RealFunction = field(repr=False)
    source: KernelSource
    profile: RadialProfile | None = field(default=None, repr=False)
    indicator: bool = False
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        validate_width(self.width)

    @property
    def dim(self) -> int:
        return 1

    def alpha(self, x: ArrayLike) -> np.ndarray | float:
        return _scalar_or_array(self.alpha_function(_as_array(x)))

    def kappa(self, x: ArrayLike) -> np.ndarray | float:
        return _scalar_or_array(self.kappa_function(_as_array(x)))

    def mean_over(self, x: ArrayLike, window: float) -> np.ndarray | float:
        """Mean of ``alpha(x + t)`` over ``t`` in ``[-window/2, window/2]``.

        Equals ``kappa(x)`` for ``window == width``.
        """
        window = validate_width(window)
        x = _as_array(x)
        if np.isclose(window, self.width, rtol=1e-14, atol=0.0):
            return self.kappa(x)
        if self.indicator:
            values = _interval_overlap(np.abs(x), 0.5 * window, 0.5 * self.width) / (window * self.width)
            return _scalar_or_array(values)
        if self.profile is not None and self.profile.anti2 is not None:
            anti2 = self.profile.anti2
            half_a, half_b = 0.5 * self.width, 0.5 * window
            values = (
                anti2(x + half_b + half_a) - anti2(x - half_b + half_a) - anti2(x + half_b - half_a) + anti2(x - half_b - half_a)
            ) / (self.width * window)
            return _scalar_or_array(values)
        return _scalar_or_array(self._numeric_mean(x, window))

    def _numeric_mean(self, x: np.ndarray, window: float) -> np.ndarray:
        def mean_at(center: float) -> float:
            half = 0.5 * window
            points = [center + sign * point for point in self.breakpoints for sign in (-1.0, 1.0)]
            value = adaptive_quad(lambda t: float(self.alpha_function(np.float64(t))), center - half, center + half, points=points)
            return value / window

        flat = np.array([mean_at(float(value)) for value in x.ravel()])
        return flat.reshape(x.shape)


def _interval_overlap(distance: np.ndarray, half_first: float, half_second: float) -> np.ndarray:
    upper = np.minimum(distance + half_first, half_second)
    lower = np.maximum(distance - half_first, -half_second)
    return np.maximum(upper - lower, 0.0)


def pair_from_antiderivatives(profile: RadialProfile, a: float) -> AveragedKernelPair:
    """Builds alpha and kappa as first- and second-order symmetric finite differences."""
    a = validate_width(a)
    anti1, anti2 = profile.anti1, profile.anti2
    if anti1 is None or anti2 is None:
        raise UnsupportedConstructionError("Anti-derivatives are required for the finite-difference kernels", profile.name)
    half = 0.5 * a

    def alpha(x: np.ndarray) -> np.ndarray:
        return (anti1(x + half) - anti1(x - half)) / a

    def kappa(x: np.ndarray) -> np.ndarray:
        return (anti2(x + a) + anti2(x - a) - 2.0 * anti2(x)) / a**2

    return AveragedKernelPair(profile.name, a, alpha, kappa, KernelSource.ANTIDERIVATIVE, profile)


def matern_pair(shape: float, a: float) -> AveragedKernelPair:
    profile = matern_profile(shape)
    a = validate_width(a)
    lam = profile.shape
    half = 0.5 * a

    def alpha(x: np.ndarray) -> np.ndarray:
        ax = np.abs(x)
        inner = ax <= half
        values = np.empty_like(ax)
        xi, xo = ax[inner], ax[~inner]
        values[inner] = 2.0 - np.exp(lam * (xi - half)) - np.exp(-lam * (xi + half))
        values[~inner] = np.exp(-lam * (xo - half)) - np.exp(-lam * (xo + half))
        return values / (lam * a)

    def kappa(x: np.ndarray) -> np.ndarray:
        ax = np.abs(x)
        inner = ax <= a
        values = np.empty_like(ax)
        xi, xo = ax[inner], ax[~inner]
        values[inner] = 2.0 * lam * (a - xi) + np.exp(lam * (xi - a)) + np.exp(-lam * (xi + a)) - 2.0 * np.exp(-lam * xi)
        values[~inner] = np.exp(-lam * (xo - a)) + np.exp(-lam * (xo + a)) - 2.0 * np.exp(-lam * xo)
        return values / (lam * a) ** 2

    return AveragedKernelPair(profile.name, a, alpha, kappa, KernelSource.CLOSED_FORM, profile, breakpoints=(0.0, half, a))


def _closed_form(profile: RadialProfile, a: float) -> AveragedKernelPair:
    pair = pair_from_antiderivatives(profile, a)
    return AveragedKernelPair(profile.name, pair.width, pair.alpha_function, pair.kappa_function, KernelSource.CLOSED_FORM, profile)


def inverse_quadratic_pair(shape: float, a: float) -> AveragedKernelPair:
    return _closed_form(inverse_quadratic_profile(shape), a)


def inverse_multiquadric_pair(shape: float, a: float) -> AveragedKernelPair:
    return _closed_form(inverse_multiquadric_profile(shape), a)


def mexican_hat_pair(shape: float, a: float) -> AveragedKernelPair:
    profile = mexican_hat_profile(shape)
    a = validate_width(a)
    lam = profile.shape
    half = 0.5 * a

    def alpha(x: np.ndarray) -> np.ndarray:
        return (0.5 + x / a) * np.exp(-lam * (x + half) ** 2) + (0.5 - x / a) * np.exp(-lam * (x - half) ** 2)

    def kappa(x: np.ndarray) -> np.ndarray:
        return (2.0 * np.exp(-lam * x**2) - np.exp(-lam * (x + a) ** 2) - np.exp(-lam * (x - a) ** 2)) / (2.0 * lam * a**2)

    return AveragedKernelPair(profile.name, a, alpha, kappa, KernelSource.CLOSED_FORM, profile)


def indicator_pair(a: float) -> AveragedKernelPair:
    a = validate_width(a)
    half = 0.5 * a

    def alpha(x: np.ndarray) -> np.ndarray:
        return np.where(np.abs(x) <= half, 1.0 / a, 0.0)

    def kappa(x: np.ndarray) -> np.ndarray:
        return np.maximum(1.0 - np.abs(x) / a, 0.0) / a

    return AveragedKernelPair("indicator", a, alpha, kappa, KernelSource.CLOSED_FORM, indicator=True, breakpoints=(half, a))


def bspline_kernel_pair(n: int, a: float) -> AveragedKernelPair:
    """``alpha = M_{2n-1}(x/a)/a`` and ``kappa = M_{2n}(x/a)/a``."""
    n = validate_order(n)
    validate_order(2 * n)
    a = validate_width(a)

    def alpha(x: np.ndarray) -> np.ndarray:
        return np.asarray(bspline_central(2 * n - 1, x / a)) / a

    def kappa(x: np.ndarray) -> np.ndarray:
        return np.asarray(bspline_central(2 * n, x / a)) / a

    knots = tuple(0.5 * a * k for k in range(2 * n + 1))
    return AveragedKernelPair(f"bspline:{n}", a, alpha, kappa, KernelSource.CLOSED_FORM, indicator=n == 1, breakpoints=knots)


def quadrature_pair(profile: RadialProfile, a: float, tol: float = 1e-12) -> AveragedKernelPair:
    """alpha and kappa of ``profile`` by adaptive quadrature of the defining convolutions.

    ``kappa(x) = (1/a) int phi(x - s) (1 - |s|/a)_+ ds`` folds the double mean into
    a single integral against the hat function.
    """
    a = validate_width(a)
    half = 0.5 * a
    phi = profile.phi

    def alpha_at(x: float) -> float:
        return adaptive_quad(lambda t: float(phi(t)), x - half, x + half, tol=tol, points=[0.0]) / a

    def kappa_at(x: float) -> float:
        def integrand(s: float) -> float:
            return float(phi(x - s)) * (1.0 - abs(s) / a)

        return adaptive_quad(integrand, -a, a, tol=tol, points=[0.0, x]) / a

    return AveragedKernelPair(
        profile.name,
        a,
        _vectorized(alpha_at),
        _vectorized(kappa_at),
        KernelSource.QUADRATURE,
        profile,
    )


def _vectorized(func: Callable[[float], float]) -> RealFunction:
    def evaluate(x: ArrayLike) -> np.ndarray:
        x = _as_array(x)
        flat = np.array([func(float(value)) for value in x.ravel()])
        return flat.reshape(x.shape)

    return evaluate


def inverse_quadratic_compact(shape: float, a: float) -> tuple[RealFunction | None, RealFunction | None]:
    """Single-arctan forms of the inverse-quadratic kernels, where their validity constraints hold.

    Returns ``(alpha, kappa)``; an entry is ``None`` when its constraint fails
    (``lam^2 (a/2)^2 < 1`` for alpha, ``lam^2 a^2 < 1`` for kappa).
    """
    lam = float(shape)
    a = validate_width(a)
    alpha = None
    kappa = None
    if (lam * a / 2.0) ** 2 < 1.0:

        def alpha(x: ArrayLike) -> np.ndarray:
            x = _as_array(x)
            return np.arctan(lam * a / (1.0 + lam**2 * (x**2 - a**2 / 4.0))) / (lam * a)

    if (lam * a) ** 2 < 1.0:

        def kappa(x: ArrayLike) -> np.ndarray:
            x = _as_array(x)
            first = np.arctan(2.0 * lam * a / (1.0 + lam**2 * (x**2 - a**2))) / (lam * a)
            denominator = (1.0 + lam**2 * x**2) ** 2 + lam**2 * a**2 * (1.0 - lam**2 * x**2)
            second = x / (lam * a**2) * np.arctan(2.0 * lam**3 * a**2 * x / denominator)
            ratio = (1.0 + lam**2 * (x + a) ** 2) * (1.0 + lam**2 * (x - a) ** 2) / (1.0 + lam**2 * x**2) ** 2
            third = np.log(ratio) / (2.0 * lam**2 * a**2)
            return first - second - third

    return alpha, kappa


def compact_discrepancy(shape: float, a: float, grid: ArrayLike, threshold: float = 1e-10) -> dict[str, float]:
    """Max deviation of the compact inverse-quadratic identities from the finite-difference forms.

    Deviations above ``threshold`` are logged as warnings; they are reported, never corrected.
    """
    grid = _as_array(grid)
    reference = inverse_quadratic_pair(shape, a)
    alpha, kappa = inverse_quadratic_compact(shape, a)
    report: dict[str, float] = {}
    if alpha is not None:
        report["alpha"] = float(np.max(np.abs(alpha(grid) - reference.alpha_function(grid))))
    if kappa is not None:
        report["kappa"] = float(np.max(np.abs(kappa(grid) - reference.kappa_function(grid))))
    for key, value in report.items():
        if not value <= threshold:
            log.warning("Compact inverse-quadratic %s deviates from the finite-difference form by %.3e", key, value)
    return report
