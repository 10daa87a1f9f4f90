"""Solved histopolants ``s_f(x) = sum_j c_j A(x, tau_j)`` and the indicators built on them."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import cho_solve

from histopolation.domains.averaging import average_of
from histopolation.domains.models import Domain, HistoProblem, uniform_segments
from histopolation.errors import ValidationError
from histopolation.helpers.logs import log_jitter
from histopolation.kernels.catalog import Kernel
from histopolation.kernels.tensor import TensorKernel
from histopolation.solver.matrix import HistoMatrix, assemble
from histopolation.solver.solve import JITTER_FACTOR, factorize, kronecker_solve, solve
from histopolation.solver.strategies import AssemblySettings, AssemblyStrategy, select_strategy

log = logging.getLogger(__name__)


@dataclass
class Histopolant:
    coefficients: np.ndarray
    kernel: Kernel
    problem: HistoProblem
    matrix: HistoMatrix | None = None
    axis_matrices: tuple[HistoMatrix, HistoMatrix] | None = None
    settings: AssemblySettings = field(default_factory=AssemblySettings, repr=False)
    _strategy: AssemblyStrategy | None = field(default=None, repr=False)

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=np.float64).ravel()
        if len(self.coefficients) != self.problem.size:
            raise ValidationError(f"{len(self.coefficients)} coefficients for {self.problem.size} samples")
        if not np.all(np.isfinite(self.coefficients)):
            raise ValidationError("Histopolant coefficients must be finite")

    @property
    def strategy(self) -> AssemblyStrategy:
        if self._strategy is None:
            self._strategy = select_strategy(self.problem, self.kernel, self.settings)
        return self._strategy

    @property
    def matrices(self) -> tuple[HistoMatrix, ...]:
        if self.axis_matrices is not None:
            return self.axis_matrices
        return () if self.matrix is None else (self.matrix,)

    @property
    def jitter(self) -> float:
        return max((matrix.jitter for matrix in self.matrices), default=0.0)

    def condition_estimate(self) -> float:
        """Estimate for the full matrix; a Kronecker product multiplies the factor estimates."""
        return float(np.prod([matrix.condition_estimate() for matrix in self.matrices]))

    @property
    def grid_coefficients(self) -> np.ndarray:
        if self.problem.grid_shape is None:
            raise ValidationError("Histopolant is not on a grid")
        return self.coefficients.reshape(self.problem.grid_shape)


def _uses_kronecker(problem: HistoProblem, kernel: Kernel) -> bool:
    return problem.is_grid and isinstance(kernel, TensorKernel) and kernel.dim == 2 and problem.is_uniform()


def axis_problems(problem: HistoProblem) -> tuple[HistoProblem, HistoProblem]:
    """1D segment problems along the rows (y) and columns (x) of a grid problem."""
    y_centers, x_centers = problem.axis_centers()
    x_half, y_half = problem.domains[0].half_widths
    return uniform_segments(y_centers, 2.0 * y_half), uniform_segments(x_centers, 2.0 * x_half)


def histopolate(
    problem: HistoProblem,
    kernel: Kernel,
    settings: AssemblySettings | None = None,
    jitter_factor: float = JITTER_FACTOR,
) -> Histopolant:
    """Assembles and solves; grid problems with tensor kernels take the Kronecker path."""
    settings = settings or AssemblySettings()
    if _uses_kronecker(problem, kernel):
        x_factor, y_factor = kernel.factors
        rows, columns = axis_problems(problem)
        row_matrix = assemble(rows, y_factor, settings)
        col_matrix = assemble(columns, x_factor, settings)
        coefficients = kronecker_solve(row_matrix, col_matrix, problem.grid_values(), jitter_factor)
        histopolant = Histopolant(coefficients, kernel, problem, axis_matrices=(row_matrix, col_matrix), settings=settings)
    else:
        matrix = assemble(problem, kernel, settings)
        coefficients = solve(matrix, problem.values, jitter_factor)
        histopolant = Histopolant(coefficients, kernel, problem, matrix=matrix, settings=settings)
    log.info(log_jitter(f"Solved {problem.size} samples:", histopolant.jitter, histopolant.condition_estimate()))
    return histopolant


def _points(h: Histopolant, x: ArrayLike) -> np.ndarray:
    points = np.asarray(x, dtype=np.float64)
    if h.problem.dim == 1 and points.ndim <= 1:
        points = points.reshape(-1, 1)
    points = np.atleast_2d(points)
    if points.shape[-1] != h.problem.dim:
        raise ValidationError(f"Points of dimension {points.shape[-1]} for a problem of dimension {h.problem.dim}")
    return points


def evaluate(h: Histopolant, x: ArrayLike) -> np.ndarray | float:
    """``s_f`` at one point (returns a float) or at an array of points."""
    scalar = np.ndim(x) == 0 or (h.problem.dim > 1 and np.ndim(x) == 1)
    values = h.strategy.averaging(_points(h, x)) @ h.coefficients
    return float(values[0]) if scalar else values


def evaluate_grid(h: Histopolant, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """``s_f`` on the tensor grid ``y x x`` of a Kronecker histopolant, rows indexed by ``y``."""
    if h.axis_matrices is None or not isinstance(h.kernel, TensorKernel):
        raise ValidationError("Separable evaluation needs a Kronecker histopolant")
    x_factor, y_factor = h.kernel.factors
    y_centers, x_centers = h.problem.axis_centers()
    alpha_x = x_factor.alpha_function(np.subtract.outer(np.asarray(x, dtype=np.float64), x_centers))
    alpha_y = y_factor.alpha_function(np.subtract.outer(np.asarray(y, dtype=np.float64), y_centers))
    return alpha_y @ h.grid_coefficients @ alpha_x.T


def evaluate_mean_grid(h: Histopolant, x: ArrayLike, x_width: float, y: ArrayLike, y_width: float) -> np.ndarray:
    """Exact means of ``s_f`` over the cells of widths ``x_width x y_width`` centered on the grid ``y x x``."""
    if h.axis_matrices is None or not isinstance(h.kernel, TensorKernel):
        raise ValidationError("Separable evaluation needs a Kronecker histopolant")
    x_factor, y_factor = h.kernel.factors
    y_centers, x_centers = h.problem.axis_centers()
    mean_x = np.asarray(x_factor.mean_over(np.subtract.outer(np.asarray(x, dtype=np.float64), x_centers), x_width))
    mean_y = np.asarray(y_factor.mean_over(np.subtract.outer(np.asarray(y, dtype=np.float64), y_centers), y_width))
    return mean_y @ h.grid_coefficients @ mean_x.T


def evaluate_mean(h: Histopolant, domain: Domain, tol: float = 1e-10) -> float:
    """Mean of ``s_f`` over ``domain``: exact through ``K`` where available, else by quadrature of ``evaluate``."""
    if domain.dim != h.problem.dim:
        raise ValidationError(f"Domain of dimension {domain.dim} for a problem of dimension {h.problem.dim}")
    if h.strategy.can_average(domain):
        return float(h.strategy.cross(domain) @ h.coefficients)
    log.debug("No exact mean over %s, averaging numerically", domain.kind.value)
    return average_of(lambda *x: float(evaluate(h, np.array(x).reshape(1, -1))[0]), domain, tol)


def cardinal_histopolant(h: Histopolant, index: int) -> Histopolant:
    """Lagrange basis function ``l_index``: unit mean on ``tau_index``, zero mean on the other domains."""
    data = np.zeros(h.problem.size)
    data[index] = 1.0
    matrix = h.matrix if h.matrix is not None else assemble(h.problem, h.kernel, h.settings)
    coefficients = solve(matrix, data)
    return Histopolant(coefficients, h.kernel, h.problem.with_values(data), matrix=matrix, settings=h.settings, _strategy=h.strategy)


def power_function(
    matrix: HistoMatrix | None,
    kernel: Kernel,
    problem: HistoProblem | None,
    target: Domain,
    settings: AssemblySettings | None = None,
) -> float:
    """``sqrt(max(0, K(tau, tau) - k(tau)^T K^{-1} k(tau)))``; ``sqrt(K(tau, tau))`` without data."""
    if problem is None or matrix is None:
        single = HistoProblem.from_domains([target], [0.0])
        return float(np.sqrt(max(0.0, select_strategy(single, kernel, settings).self_value(target))))
    strategy = select_strategy(problem, kernel, settings)
    return _power(matrix, strategy, target)


def _power(matrix: HistoMatrix, strategy: AssemblyStrategy, target: Domain) -> float:
    factorize(matrix)
    kvec = strategy.cross(target)
    quadratic = float(kvec @ cho_solve(matrix.factor, kvec))
    return float(np.sqrt(max(0.0, strategy.self_value(target) - quadratic)))


def power_profile(h: Histopolant, targets: Sequence[Domain]) -> np.ndarray:
    """Power function over a list of target domains, sharing the factorization of ``h``."""
    matrix = h.matrix if h.matrix is not None else assemble(h.problem, h.kernel, h.settings)
    return np.array([_power(matrix, h.strategy, target) for target in targets])


def sliding_segments(centers: ArrayLike, width: float) -> list[Domain]:
    return [Domain.segment(float(center), 0.5 * width) for center in np.asarray(centers, dtype=np.float64)]


def kernel_span_norm(matrix: HistoMatrix, coefficients: ArrayLike) -> float:
    """Native-space norm of ``sum_j c_j A(., tau_j)``: ``sqrt(c^T K c)``."""
    coefficients = np.asarray(coefficients, dtype=np.float64)
    return float(np.sqrt(max(0.0, coefficients @ matrix.entries @ coefficients)))
