"""Univariate generating functions phi with optional first and second anti-derivatives."""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from histopolation.errors import ValidationError

log = logging.getLogger(__name__)

RealFunction = Callable[[ArrayLike], np.ndarray]


@dataclass(frozen=True)
class RadialProfile:
    """Even generating function ``phi`` of a radial kernel ``Phi(x, y) = phi(|x - y|)``.

    ``anti1`` and ``anti2`` are the first and second anti-derivatives of ``phi`` on the
    real line; profiles without elementary anti-derivatives leave them ``None``.
    """

    name: str
    shape: float
    phi: RealFunction
    anti1: RealFunction | None = None
    anti2: RealFunction | None = None

    def __post_init__(self):
        if not self.shape > 0:
            raise ValidationError(f'Shape parameter of "{self.name}" must be positive, got {self.shape}')

    def __call__(self, r: ArrayLike) -> np.ndarray:
        return self.phi(r)

    @property
    def has_antiderivatives(self) -> bool:
        return self.anti1 is not None and self.anti2 is not None


def _as_array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def matern_profile(shape: float) -> RadialProfile:
    lam = float(shape)

    def phi(x: ArrayLike) -> np.ndarray:
        return np.exp(-lam * np.abs(_as_array(x)))

    def anti1(x: ArrayLike) -> np.ndarray:
        x = _as_array(x)
        return np.sign(x) * -np.expm1(-lam * np.abs(x)) / lam

    def anti2(x: ArrayLike) -> np.ndarray:
        ax = np.abs(_as_array(x))
        return ax / lam + np.expm1(-lam * ax) / lam**2

    return RadialProfile("matern", lam, phi, anti1, anti2)


def inverse_quadratic_profile(shape: float) -> RadialProfile:
    lam = float(shape)

    def phi(x: ArrayLike) -> np.ndarray:
        return 1.0 / (1.0 + (lam * _as_array(x)) ** 2)

    def anti1(x: ArrayLike) -> np.ndarray:
        return np.arctan(lam * _as_array(x)) / lam

    def anti2(x: ArrayLike) -> np.ndarray:
        x = _as_array(x)
        return x * np.arctan(lam * x) / lam - np.log1p((lam * x) ** 2) / (2.0 * lam**2)

    return RadialProfile("inverse-quadratic", lam, phi, anti1, anti2)


def inverse_multiquadric_profile(shape: float) -> RadialProfile:
    lam = float(shape)

    def phi(x: ArrayLike) -> np.ndarray:
        return 1.0 / np.sqrt(1.0 + (lam * _as_array(x)) ** 2)

    def anti1(x: ArrayLike) -> np.ndarray:
        return np.arcsinh(lam * _as_array(x)) / lam

    def anti2(x: ArrayLike) -> np.ndarray:
        x = _as_array(x)
        return x * np.arcsinh(lam * x) / lam - np.sqrt(1.0 + (lam * x) ** 2) / lam**2

    return RadialProfile("inverse-multiquadric", lam, phi, anti1, anti2)


def mexican_hat_profile(shape: float) -> RadialProfile:
    lam = float(shape)

    def phi(x: ArrayLike) -> np.ndarray:
        x2 = _as_array(x) ** 2
        return (1.0 - 2.0 * lam * x2) * np.exp(-lam * x2)

    def anti1(x: ArrayLike) -> np.ndarray:
        x = _as_array(x)
        return x * np.exp(-lam * x**2)

    def anti2(x: ArrayLike) -> np.ndarray:
        return -np.exp(-lam * _as_array(x) ** 2) / (2.0 * lam)

    return RadialProfile("mexican-hat", lam, phi, anti1, anti2)


def gauss_profile(shape: float) -> RadialProfile:
    # anti-derivatives need the error function: quadrature path only
    lam = float(shape)

    def phi(x: ArrayLike) -> np.ndarray:
        return np.exp(-lam * _as_array(x) ** 2)

    return RadialProfile("gauss", lam, phi)


PROFILES: dict[str, Callable[[float], RadialProfile]] = {
    "matern": matern_profile,
    "inverse-quadratic": inverse_quadratic_profile,
    "inverse-multiquadric": inverse_multiquadric_profile,
    "mexican-hat": mexican_hat_profile,
    "gauss": gauss_profile,
}


def create_profile(name: str, shape: float) -> RadialProfile:
    factory = PROFILES.get(name.lower(), None)
    if factory is None:
        known = ", ".join(PROFILES.keys())
        raise ValidationError(f'Unknown profile "{name}" (known: {known})')
    return factory(shape)
