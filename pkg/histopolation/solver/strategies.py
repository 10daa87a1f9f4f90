"""Assembly strategies for the histopolation matrix and the kernel vectors built on it.

Each strategy answers, for its problem and kernel:

* ``gram()``           entries ``K(tau_i, tau_j)``
* ``cross(target)``    ``K(target, tau_i)`` for all data domains
* ``self_value(t)``    ``K(target, target)``
* ``averaging(x)``     ``A(x_k, tau_j)`` at points
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from scipy.spatial.distance import cdist

from histopolation.config.app import AppConfig
from histopolation.domains.geometry import overlap_measure
from histopolation.domains.models import Domain, HistoProblem
from histopolation.errors import UnsupportedConstructionError, ValidationError
from histopolation.helpers.parallel import fill_rows, mirror_upper
from histopolation.kernels.ball import BallAveragedKernel
from histopolation.kernels.catalog import Kernel
from histopolation.kernels.pairs import (
    AveragedKernelPair,
    KernelSource,
    indicator_pair,
    pair_from_antiderivatives,
    quadrature_pair,
)
from histopolation.kernels.tensor import TensorKernel
from histopolation.solver.quadrature import BaseKernel, QuadratureRule, base_kernel, domain_rule, has_base_kernel

log = logging.getLogger(__name__)

WIDTH_TOLERANCE = 1e-12


class Assembly(StrEnum):
    CLOSED_FORM = "closed-form"
    OVERLAP = "overlap"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class AssemblySettings:
    quadrature_nodes: int = 32
    max_workers: int = 1
    dense_limit: int = 4096

    @classmethod
    def from_config(cls, config: AppConfig) -> "AssemblySettings":
        return cls(config.quadrature_nodes, config.max_workers, config.dense_limit)


def kernel_factors(kernel: Kernel) -> tuple[AveragedKernelPair, ...]:
    if isinstance(kernel, TensorKernel):
        return kernel.factors
    if isinstance(kernel, AveragedKernelPair):
        return (kernel,)
    return ()


def resized_pair(pair: AveragedKernelPair, width: float) -> AveragedKernelPair:
    """The same generating function averaged over segments of another width."""
    if np.isclose(pair.width, width, rtol=WIDTH_TOLERANCE, atol=0.0):
        return pair
    if pair.indicator:
        return indicator_pair(width)
    if pair.profile is None:
        raise UnsupportedConstructionError(f"Cannot resize kernel to width {width}", pair.name)
    if pair.profile.has_antiderivatives:
        return pair_from_antiderivatives(pair.profile, width)
    return quadrature_pair(pair.profile, width)


class AssemblyStrategy(ABC):
    assembly: Assembly

    def __init__(self, problem: HistoProblem, kernel: Kernel, settings: AssemblySettings | None = None) -> None:
        self.problem = problem
        self.kernel = kernel
        self.settings = settings or AssemblySettings()

    @property
    def name(self) -> str:
        return f"{self.__class__.__name__}[{self.kernel.name}]"

    @classmethod
    @abstractmethod
    def can_build(cls, problem: HistoProblem, kernel: Kernel) -> bool: ...

    @abstractmethod
    def gram(self) -> np.ndarray: ...

    @abstractmethod
    def cross(self, target: Domain) -> np.ndarray: ...

    @abstractmethod
    def self_value(self, target: Domain) -> float: ...

    @abstractmethod
    def averaging(self, points: np.ndarray) -> np.ndarray: ...

    def can_average(self, target: Domain) -> bool:
        return True


def _matching_widths(problem: HistoProblem, widths: tuple[float, ...]) -> bool:
    domain_widths = problem.domains[0].widths
    return len(domain_widths) == len(widths) and all(
        np.isclose(first, second, rtol=WIDTH_TOLERANCE, atol=0.0) for first, second in zip(domain_widths, widths)
    )


class TranslateStrategy(AssemblyStrategy):
    """Translates of one domain: ``K`` is ``kappa`` of the center offsets."""

    assembly = Assembly.CLOSED_FORM

    def __init__(self, problem: HistoProblem, kernel: Kernel, settings: AssemblySettings | None = None) -> None:
        super().__init__(problem, kernel, settings)
        self.centers = problem.centers
        self.template = problem.domains[0]
        factors = kernel_factors(kernel)
        if any(factor.source == KernelSource.QUADRATURE for factor in factors):
            self.assembly = Assembly.QUADRATURE

    @classmethod
    def can_build(cls, problem: HistoProblem, kernel: Kernel) -> bool:
        if kernel.dim != problem.dim or not problem.is_uniform():
            return False
        domain = problem.domains[0]
        if isinstance(kernel, BallAveragedKernel):
            return domain.is_ball and np.isclose(domain.radius, kernel.radius, rtol=WIDTH_TOLERANCE, atol=0.0)
        if domain.is_ball and domain.dim > 1:
            return False
        widths = tuple(factor.width for factor in kernel_factors(kernel))
        return _matching_widths(problem, widths)

    def _kappa_of_offsets(self, offsets: np.ndarray) -> np.ndarray:
        kernel = self.kernel
        if isinstance(kernel, BallAveragedKernel):
            distances = np.linalg.norm(offsets, axis=-1)
            unique, inverse = np.unique(distances, return_inverse=True)
            return np.asarray(kernel.kappa(unique))[inverse].reshape(distances.shape)
        if isinstance(kernel, AveragedKernelPair):
            return np.asarray(kernel.kappa_function(offsets[..., 0]))
        return np.asarray(kernel.kappa(offsets))

    def gram(self) -> np.ndarray:
        n = self.problem.size

        def compute(block: slice) -> np.ndarray:
            offsets = self.centers[block, np.newaxis, :] - self.centers[np.newaxis, :, :]
            return self._kappa_of_offsets(offsets)

        entries = fill_rows(n, n, compute, self.settings.max_workers)
        return mirror_upper(entries)

    def is_translate(self, target: Domain) -> bool:
        return target.shape_key() == self.template.shape_key()

    def can_average(self, target: Domain) -> bool:
        if self.is_translate(target):
            return True
        if isinstance(self.kernel, BallAveragedKernel) or target.is_ball:
            return False
        return target.dim == self.problem.dim

    def cross(self, target: Domain) -> np.ndarray:
        offsets = np.asarray(target.center)[np.newaxis, :] - self.centers
        if self.is_translate(target):
            return self._kappa_of_offsets(offsets)
        if not self.can_average(target):
            raise UnsupportedConstructionError(f"No exact mean of the ball kernel over {target.kind.value} domains", self.kernel.name)
        values = np.ones(self.problem.size)
        for axis, factor in enumerate(kernel_factors(self.kernel)):
            values = values * np.asarray(factor.mean_over(offsets[:, axis], target.widths[axis]))
        return values

    def self_value(self, target: Domain) -> float:
        if self.is_translate(target):
            return float(self._kappa_of_offsets(np.zeros((1, target.dim)))[0])
        if not self.can_average(target):
            raise UnsupportedConstructionError("No exact self-mean of the ball kernel", self.kernel.name)
        value = 1.0
        for axis, factor in enumerate(kernel_factors(self.kernel)):
            value *= float(resized_pair(factor, target.widths[axis]).kappa(0.0))
        return value

    def averaging(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(points)
        kernel = self.kernel
        if isinstance(kernel, BallAveragedKernel):
            return np.asarray(kernel.alpha(cdist(points, self.centers)))
        offsets = points[:, np.newaxis, :] - self.centers[np.newaxis, :, :]
        if isinstance(kernel, AveragedKernelPair):
            return np.asarray(kernel.alpha_function(offsets[..., 0]))
        return np.asarray(kernel.alpha(offsets))


def _is_indicator(kernel: Kernel) -> bool:
    factors = kernel_factors(kernel)
    return len(factors) > 0 and all(factor.indicator for factor in factors)


class OverlapStrategy(AssemblyStrategy):
    """Indicator kernel: ``K = |w_i & w_j| / (|w_i| |w_j|)`` for arbitrary domains."""

    assembly = Assembly.OVERLAP

    def __init__(self, problem: HistoProblem, kernel: Kernel, settings: AssemblySettings | None = None) -> None:
        super().__init__(problem, kernel, settings)
        self.domains = problem.domains
        self.measures = np.array([domain.measure() for domain in self.domains])

    @classmethod
    def can_build(cls, problem: HistoProblem, kernel: Kernel) -> bool:
        return kernel.dim == problem.dim and _is_indicator(kernel)

    def _box_overlaps(self, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
        lows = np.array([domain.lower for domain in self.domains])
        highs = np.array([domain.upper for domain in self.domains])
        lengths = np.minimum(upper[:, np.newaxis, :], highs[np.newaxis]) - np.maximum(lower[:, np.newaxis, :], lows[np.newaxis])
        return np.prod(np.maximum(lengths, 0.0), axis=-1)

    def _has_balls(self) -> bool:
        return any(domain.is_ball for domain in self.domains)

    def gram(self) -> np.ndarray:
        n = self.problem.size
        if not self._has_balls():
            lows = np.array([domain.lower for domain in self.domains])
            highs = np.array([domain.upper for domain in self.domains])

            def compute(block: slice) -> np.ndarray:
                return self._box_overlaps(lows[block], highs[block])

            overlaps = fill_rows(n, n, compute, self.settings.max_workers)
        else:
            overlaps = np.zeros((n, n))
            for i in range(n):
                for j in range(i, n):
                    overlaps[i, j] = overlap_measure(self.domains[i], self.domains[j])
        overlaps = mirror_upper(overlaps)
        return overlaps / np.outer(self.measures, self.measures)

    def cross(self, target: Domain) -> np.ndarray:
        if target.is_ball or self._has_balls():
            overlaps = np.array([overlap_measure(target, domain) for domain in self.domains])
        else:
            overlaps = self._box_overlaps(target.lower[np.newaxis], target.upper[np.newaxis])[0]
        return overlaps / (target.measure() * self.measures)

    def self_value(self, target: Domain) -> float:
        return 1.0 / target.measure()

    def averaging(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(points)
        inside = np.stack([domain.contains(points) for domain in self.domains], axis=-1)
        return inside / self.measures[np.newaxis, :]


class QuadratureStrategy(AssemblyStrategy):
    """Per-domain Gauss–Legendre rules applied to the base kernel ``Phi``."""

    assembly = Assembly.QUADRATURE

    def __init__(self, problem: HistoProblem, kernel: Kernel, settings: AssemblySettings | None = None) -> None:
        super().__init__(problem, kernel, settings)
        self.base = base_kernel(kernel)
        self.rule = QuadratureRule.gauss_legendre(problem.domains, self.settings.quadrature_nodes)

    @classmethod
    def can_build(cls, problem: HistoProblem, kernel: Kernel) -> bool:
        return kernel.dim == problem.dim and has_base_kernel(kernel)

    def gram(self) -> np.ndarray:
        return quadrature_gram(self.base, self.rule, self.settings.max_workers)

    def _target_rule(self, target: Domain) -> tuple[np.ndarray, np.ndarray]:
        return domain_rule(target, self.settings.quadrature_nodes)

    def cross(self, target: Domain) -> np.ndarray:
        points, weights = self._target_rule(target)
        projected = weights @ self.base(points, self.rule.nodes)
        return self.rule.weights @ projected

    def self_value(self, target: Domain) -> float:
        points, weights = self._target_rule(target)
        return float(weights @ self.base(points, points) @ weights)

    def averaging(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(points)
        return (self.rule.weights @ self.base(points, self.rule.nodes).T).T


def quadrature_gram(base: BaseKernel, rule: QuadratureRule, max_workers: int = 1) -> np.ndarray:
    """``K^Q_ij = w_i^T Phi(X, X) w_j``, filled from the upper triangle so it is exactly symmetric."""
    n = rule.size
    blocks = [rule.domain_nodes(index) for index in range(n)]

    def compute(block: slice) -> np.ndarray:
        rows = []
        for index in range(block.start, block.stop):
            points, weights = blocks[index]
            projected = weights @ base(points, rule.nodes)
            rows.append(rule.weights @ projected)
        return np.array(rows)

    entries = fill_rows(n, n, compute, max_workers)
    return mirror_upper(entries)


STRATEGIES: tuple[type[AssemblyStrategy], ...] = (TranslateStrategy, OverlapStrategy, QuadratureStrategy)


def select_strategy(problem: HistoProblem, kernel: Kernel, settings: AssemblySettings | None = None) -> AssemblyStrategy:
    if kernel.dim != problem.dim:
        raise ValidationError(f"Kernel of dimension {kernel.dim} cannot assemble a problem of dimension {problem.dim}")
    for strategy in STRATEGIES:
        if not strategy.can_build(problem, kernel):
            continue
        log.debug("Assembling %s samples with %s", problem.size, strategy.__name__)
        return strategy(problem, kernel, settings)
    raise UnsupportedConstructionError("No assembly strategy for this problem", kernel.name)
