from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike

from histopolation.errors import ValidationError

LORENTZIAN_SHIFT = 0.4
STEP_AT = 0.0


class FunctionName(StrEnum):
    LORENTZIAN = "lorentzian"
    CONSTANT = "constant"
    LINEAR = "linear"
    STEP = "step"


@dataclass(frozen=True)
class SampleFunction:
    """Univariate function with its exact mean over ``[lower, upper]``."""

    name: str
    evaluate: Callable[[ArrayLike], np.ndarray]
    mean: Callable[[ArrayLike, ArrayLike], np.ndarray]

    def __call__(self, x: ArrayLike) -> np.ndarray:
        return self.evaluate(x)

    def segment_means(self, centers: ArrayLike, width: float) -> np.ndarray:
        centers = np.asarray(centers, dtype=np.float64)
        return np.asarray(self.mean(centers - 0.5 * width, centers + 0.5 * width))


def _lorentzian() -> SampleFunction:
    def evaluate(x: ArrayLike) -> np.ndarray:
        return 1.0 / (1.0 + (np.asarray(x, dtype=np.float64) - LORENTZIAN_SHIFT) ** 2)

    def mean(lower: ArrayLike, upper: ArrayLike) -> np.ndarray:
        lower, upper = np.asarray(lower, dtype=np.float64), np.asarray(upper, dtype=np.float64)
        return (np.arctan(upper - LORENTZIAN_SHIFT) - np.arctan(lower - LORENTZIAN_SHIFT)) / (upper - lower)

    return SampleFunction(FunctionName.LORENTZIAN.value, evaluate, mean)


def _constant() -> SampleFunction:
    def evaluate(x: ArrayLike) -> np.ndarray:
        return np.ones_like(np.asarray(x, dtype=np.float64))

    def mean(lower: ArrayLike, upper: ArrayLike) -> np.ndarray:
        return np.ones_like(np.asarray(lower, dtype=np.float64))

    return SampleFunction(FunctionName.CONSTANT.value, evaluate, mean)


def _linear() -> SampleFunction:
    def evaluate(x: ArrayLike) -> np.ndarray:
        return np.asarray(x, dtype=np.float64)

    def mean(lower: ArrayLike, upper: ArrayLike) -> np.ndarray:
        return 0.5 * (np.asarray(lower, dtype=np.float64) + np.asarray(upper, dtype=np.float64))

    return SampleFunction(FunctionName.LINEAR.value, evaluate, mean)


def _step() -> SampleFunction:
    def evaluate(x: ArrayLike) -> np.ndarray:
        return np.where(np.asarray(x, dtype=np.float64) >= STEP_AT, 1.0, 0.0)

    def mean(lower: ArrayLike, upper: ArrayLike) -> np.ndarray:
        lower, upper = np.asarray(lower, dtype=np.float64), np.asarray(upper, dtype=np.float64)
        return np.clip(upper - np.maximum(lower, STEP_AT), 0.0, None) / (upper - lower)

    return SampleFunction(FunctionName.STEP.value, evaluate, mean)


FUNCTIONS: dict[FunctionName, Callable[[], SampleFunction]] = {
    FunctionName.LORENTZIAN: _lorentzian,
    FunctionName.CONSTANT: _constant,
    FunctionName.LINEAR: _linear,
    FunctionName.STEP: _step,
}


def create_function(name: str) -> SampleFunction:
    try:
        return FUNCTIONS[FunctionName(name.lower())]()
    except ValueError as ex:
        known = ", ".join(item.value for item in FunctionName)
        raise ValidationError(f'Unknown test function "{name}" (known: {known})') from ex
