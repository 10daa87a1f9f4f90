"""Tabulations of kernels and of Lagrange (cardinal) basis functions."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from histopolation.config.app import AppConfig
from histopolation.domains.models import uniform_segments
from histopolation.errors import ValidationError
from histopolation.experiments.functions import FunctionName, create_function
from histopolation.kernels.catalog import create_ball, create_pair, is_ball
from histopolation.solver.histopolant import cardinal_histopolant, evaluate, evaluate_mean, histopolate
from histopolation.solver.strategies import AssemblySettings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Table:
    header: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows, dtype=np.float64))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "header", tuple(self.header))
        if rows.shape[1] != len(self.header):
            raise ValidationError(f"{len(self.header)} columns in the header, {rows.shape[1]} in the rows")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.header.index(name)]


@dataclass(frozen=True)
class LagrangeTables:
    values: Table
    cardinal: Table
    cardinal_deviation: float
    identity_deviation: float


def kernel_table(kernel_name: str, x_grid: ArrayLike, shape: float = 1.0, width: float = 1.0) -> Table:
    """``x, alpha, kappa, alpha/kappa(0), kappa/kappa(0)``; ``x`` is the distance for ball kernels."""
    x = np.asarray(x_grid, dtype=np.float64).ravel()
    kernel = create_ball(kernel_name, shape, width) if is_ball(kernel_name) else create_pair(kernel_name, shape, width)
    alpha = np.asarray(kernel.alpha(x), dtype=np.float64)
    kappa = np.asarray(kernel.kappa(x), dtype=np.float64)
    peak = float(kernel.kappa(0.0))
    columns = [x, alpha, kappa, alpha / peak, kappa / peak]
    return Table(("x", "alpha", "kappa", "alpha_norm", "kappa_norm"), np.column_stack(columns))


def lagrange_table(
    kernel_name: str,
    centers: Sequence[float],
    a: float,
    x_grid: ArrayLike,
    shape: float = 1.0,
    function_name: str = FunctionName.LORENTZIAN.value,
    config: AppConfig | None = None,
) -> LagrangeTables:
    """Values of ``l_1..l_n`` on ``x_grid`` and the cardinal means ``lambda_i(l_j)``.

    ``s_direct`` is the solved histopolant of ``function_name``; ``s_cardinal`` rebuilds it as
    ``sum_j lambda_j(f) l_j``.
    """
    config = config or AppConfig()
    settings = AssemblySettings.from_config(config)
    function = create_function(function_name)
    x = np.asarray(x_grid, dtype=np.float64).ravel()
    data = function.segment_means(centers, a)
    problem = uniform_segments(centers, a, data)
    h = histopolate(problem, create_pair(kernel_name, shape, a), settings, config.jitter_factor)
    basis = [cardinal_histopolant(h, index) for index in range(problem.size)]
    values = np.column_stack([evaluate(ell, x) for ell in basis])
    cardinal = np.array([[evaluate_mean(ell, domain) for ell in basis] for domain in problem.domains])
    direct = np.asarray(evaluate(h, x))
    rebuilt = values @ data
    names = [f"l_{index}" for index in range(1, problem.size + 1)]
    value_rows = np.column_stack([x, values, values.sum(axis=1), direct, rebuilt])
    cardinal_rows = np.column_stack([np.arange(1, problem.size + 1), cardinal])
    cardinal_deviation = float(np.max(np.abs(cardinal - np.eye(problem.size))))
    identity_deviation = float(np.max(np.abs(direct - rebuilt)))
    log.info("Cardinal deviation %.3e, cardinal form deviation %.3e", cardinal_deviation, identity_deviation)
    return LagrangeTables(
        Table(("x", *names, "partition", "s_direct", "s_cardinal"), value_rows),
        Table(("i", *names), cardinal_rows),
        cardinal_deviation,
        identity_deviation,
    )
