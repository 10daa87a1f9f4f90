"""1D convergence runs on equispaced segments in ``[-1, 1]``."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from histopolation.config.app import AppConfig
from histopolation.domains.geometry import fill_distance
from histopolation.domains.models import Domain, equispaced_centers, uniform_segments
from histopolation.errors import NumericFailureError, ValidationError
from histopolation.experiments.functions import SampleFunction, create_function
from histopolation.helpers.logs import log_problem_size
from histopolation.kernels.catalog import create_pair
from histopolation.solver.histopolant import Histopolant, evaluate, evaluate_mean, histopolate
from histopolation.solver.strategies import AssemblySettings

log = logging.getLogger(__name__)

STUDY_REGION = Domain.interval(-1.0, 1.0)
POINTS_PER_SEGMENT = 10


class WidthPolicy(StrEnum):
    FIXED = "fixed"
    SHRINK = "shrink"


@dataclass(frozen=True)
class WidthRule:
    policy: WidthPolicy
    width: float | None = None

    @classmethod
    def parse(cls, value: str) -> "WidthRule":
        """``fixed:<a>`` or ``shrink``."""
        head, _, tail = value.strip().lower().partition(":")
        if head == WidthPolicy.SHRINK and len(tail) == 0:
            return cls(WidthPolicy.SHRINK)
        if head == WidthPolicy.FIXED:
            try:
                width = float(tail)
            except ValueError as ex:
                raise ValidationError(f'Expected "fixed:<a>", got "{value}"') from ex
            if not (math.isfinite(width) and width > 0):
                raise ValidationError(f"Fixed segment length must be positive, got {tail}")
            return cls(WidthPolicy.FIXED, width)
        raise ValidationError(f'Unknown width rule "{value}" (use fixed:<a> or shrink)')

    def width_for(self, n: int) -> float:
        if self.policy == WidthPolicy.FIXED:
            return float(self.width)
        if n < 2:
            raise ValidationError("Shrinking segments need n >= 2")
        return 2.0 / (n - 1)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    a: float
    sup_err: float
    sup_mean_err: float
    cond_estimate: float
    jitter_used: float
    fill: float
    failed: bool = False
    message: str = field(default="", compare=False)

    @classmethod
    def failure(cls, n: int, a: float, fill: float, message: str) -> "ConvergenceRow":
        nan = float("nan")
        return cls(n, a, nan, nan, nan, nan, fill, failed=True, message=message)


def sup_error(h: Histopolant, function: SampleFunction, n: int) -> float:
    """``max |f - s_f|`` on ``10 n`` uniform points of ``[-1, 1]``."""
    points = np.linspace(-1.0, 1.0, POINTS_PER_SEGMENT * n)
    return float(np.max(np.abs(function(points) - evaluate(h, points))))


def sup_mean_error(h: Histopolant, function: SampleFunction, a: float, points: int) -> float:
    """``max |mean(f) - mean(s_f)|`` over windows of length ``a`` centered on ``points`` uniform points of ``[-1, 1]``."""
    centers = np.linspace(-1.0, 1.0, points)
    expected = function.segment_means(centers, a)
    means = np.array([evaluate_mean(h, Domain.segment(float(center), 0.5 * a)) for center in centers])
    return float(np.max(np.abs(expected - means)))


def convergence_row(kernel_name: str, function: SampleFunction, n: int, rule: WidthRule, shape: float, config: AppConfig) -> ConvergenceRow:
    a = rule.width_for(n)
    centers = equispaced_centers(n)
    problem = uniform_segments(centers, a, function.segment_means(centers, a))
    fill = fill_distance(problem, STUDY_REGION, config.fill_points)
    settings = AssemblySettings.from_config(config)
    try:
        h = histopolate(problem, create_pair(kernel_name, shape, a), settings, config.jitter_factor)
        return ConvergenceRow(
            n,
            a,
            sup_error(h, function, n),
            sup_mean_error(h, function, a, config.mean_error_points),
            h.condition_estimate(),
            h.jitter,
            fill,
        )
    except NumericFailureError as ex:
        log.warning("n = %s failed: %s", n, ex)
        return ConvergenceRow.failure(n, a, fill, str(ex))


def converge(
    kernel_name: str,
    function_name: str,
    n_list: Sequence[int],
    rule: WidthRule,
    shape: float = 1.0,
    config: AppConfig | None = None,
) -> list[ConvergenceRow]:
    config = config or AppConfig()
    if len(n_list) == 0:
        raise ValidationError("Convergence run needs at least one n")
    if any(n < 1 for n in n_list):
        raise ValidationError(f"Segment counts must be positive, got {list(n_list)}")
    function = create_function(function_name)
    rows = []
    for n in n_list:
        log.info(log_problem_size(f"Convergence {kernel_name}/{function.name}", n, 1))
        rows.append(convergence_row(kernel_name, function, n, rule, shape, config))
    return rows


def fitted_slope(rows: Sequence[ConvergenceRow], column: str) -> float:
    """Least-squares slope of ``log(column)`` against ``log(n)`` over the rows that succeeded."""
    usable = [row for row in rows if not row.failed and getattr(row, column) > 0]
    if len(usable) < 2:
        raise ValidationError(f'Need two successful rows to fit a slope of "{column}"')
    n = np.log([row.n for row in usable])
    values = np.log([getattr(row, column) for row in usable])
    return float(np.polyfit(n, values, 1)[0])
