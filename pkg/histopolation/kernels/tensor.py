from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from histopolation.errors import ValidationError
from histopolation.kernels.pairs import AveragedKernelPair


@dataclass(frozen=True)
class TensorKernel:
    """Product of univariate averaged kernel pairs, one per axis."""

    factors: tuple[AveragedKernelPair, ...]

    def __post_init__(self):
        if len(self.factors) == 0:
            raise ValidationError("Tensor kernel needs at least one factor")

    @property
    def name(self) -> str:
        return "x".join(factor.name for factor in self.factors)

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(factor.width for factor in self.factors)

    def _split(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape[-1] != self.dim:
            raise ValidationError(f"Tensor kernel of dimension {self.dim} evaluated at points of dimension {x.shape[-1]}")
        return x

    def alpha(self, x: ArrayLike) -> np.ndarray | float:
        """Product of per-axis ``alpha`` at difference vectors ``x`` (last axis = coordinates)."""
        x = self._split(x)
        values = np.ones(x.shape[:-1])
        for axis, factor in enumerate(self.factors):
            values = values * factor.alpha_function(x[..., axis])
        return float(values) if values.ndim == 0 else values

    def kappa(self, x: ArrayLike) -> np.ndarray | float:
        x = self._split(x)
        values = np.ones(x.shape[:-1])
        for axis, factor in enumerate(self.factors):
            values = values * factor.kappa_function(x[..., axis])
        return float(values) if values.ndim == 0 else values

    def mean_over(self, x: ArrayLike, windows: ArrayLike) -> np.ndarray | float:
        x = self._split(x)
        windows = np.broadcast_to(np.asarray(windows, dtype=np.float64), (self.dim,))
        values = np.ones(x.shape[:-1])
        for axis, factor in enumerate(self.factors):
            values = values * np.asarray(factor.mean_over(x[..., axis], float(windows[axis])))
        return float(values) if values.ndim == 0 else values


def tensor(pairs: list[AveragedKernelPair]) -> TensorKernel:
    return TensorKernel(tuple(pairs))
