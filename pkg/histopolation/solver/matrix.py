import logging
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

import numpy as np

from histopolation.domains.models import HistoProblem
from histopolation.errors import ValidationError
from histopolation.helpers.logs import log_problem_size, log_time
from histopolation.kernels.catalog import Kernel
from histopolation.kernels.profiles import RadialProfile
from histopolation.solver.quadrature import BaseKernel, QuadratureRule, radial_base
from histopolation.solver.strategies import Assembly, AssemblySettings, quadrature_gram, select_strategy

log = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12


@dataclass
class HistoMatrix:
    """Symmetric histopolation matrix with its lazily computed Cholesky factor."""

    entries: np.ndarray
    assembly: Assembly
    jitter: float = 0.0
    factor: Any = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.entries = np.atleast_2d(np.asarray(self.entries, dtype=np.float64))
        rows, columns = self.entries.shape
        if rows != columns:
            raise ValidationError(f"Histopolation matrix must be square, got {rows}x{columns}")
        scale = max(1.0, float(np.max(np.abs(self.entries))))
        if not np.allclose(self.entries, self.entries.T, rtol=0.0, atol=SYMMETRY_TOLERANCE * scale):
            raise ValidationError("Histopolation matrix is not symmetric")

    @classmethod
    def identity(cls, size: int) -> "HistoMatrix":
        return cls(np.eye(size), Assembly.CLOSED_FORM)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def is_factorized(self) -> bool:
        return self.factor is not None

    def jittered(self) -> np.ndarray:
        return self.entries + self.jitter * np.eye(self.size)

    def condition_estimate(self) -> float:
        """Squared ratio of extreme Cholesky diagonal entries; a cheap proxy for the 2-norm condition."""
        if self.factor is None:
            raise ValidationError("Matrix is not factorized")
        diagonal = np.abs(np.diag(self.factor[0]))
        return float((diagonal.max() / diagonal.min()) ** 2)


def check_dense_limit(problem: HistoProblem, settings: AssemblySettings):
    if problem.size > settings.dense_limit and not problem.is_grid:
        raise ValidationError(
            f"{problem.size} samples exceed the dense solver limit of {settings.dense_limit}; "
            "declare the samples as a grid or raise dense_limit in the config"
        )


def assemble(problem: HistoProblem, kernel: Kernel, settings: AssemblySettings | None = None) -> HistoMatrix:
    """``K(tau_i, tau_j)`` by closed-form translates, exact overlaps or quadrature, in that order of preference."""
    settings = settings or AssemblySettings()
    check_dense_limit(problem, settings)
    start = datetime.now()
    strategy = select_strategy(problem, kernel, settings)
    matrix = HistoMatrix(strategy.gram(), strategy.assembly)
    log.debug(log_problem_size(f"Assembled ({strategy.assembly.value})", problem.size, problem.dim))
    log.debug(log_time(f"Assembly of {problem.size} samples", start))
    return matrix


def assemble_quadrature(
    problem: HistoProblem,
    base: BaseKernel | RadialProfile,
    rule: QuadratureRule,
    settings: AssemblySettings | None = None,
) -> HistoMatrix:
    settings = settings or AssemblySettings()
    if rule.size != problem.size:
        raise ValidationError(f"Quadrature rule covers {rule.size} domains, problem has {problem.size}")
    if rule.nodes.shape[1] != problem.dim:
        raise ValidationError(f"Quadrature nodes of dimension {rule.nodes.shape[1]} for a problem of dimension {problem.dim}")
    if isinstance(base, RadialProfile):
        base = radial_base(base)
    entries = quadrature_gram(base, rule, settings.max_workers)
    return HistoMatrix(entries, Assembly.QUADRATURE)
