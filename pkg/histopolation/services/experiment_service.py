import logging
import os

import numpy as np

from histopolation.config.app import AppConfig
from histopolation.data.image_source import load_image, save_image
from histopolation.data.samples_source import load_samples
from histopolation.data.table_source import load_table, save_table
from histopolation.domains.models import HistoProblem
from histopolation.domains.unisolvence import UnisolvenceReport, unisolvence_precheck
from histopolation.errors import ValidationError
from histopolation.experiments import convergence, imaging, tables
from histopolation.experiments.convergence import ConvergenceRow, WidthRule
from histopolation.experiments.imaging import UpscaleMode
from histopolation.experiments.tables import Table
from histopolation.fourier.certificate import SpectralCertificate, certify_averaging, kappa_hat_check
from histopolation.helpers.decorator import execution
from histopolation.helpers.string import parse_axes
from histopolation.kernels.catalog import Kernel, create_ball, create_pair, create_tensor, is_ball
from histopolation.services.base import IExperimentService
from histopolation.solver.histopolant import evaluate, histopolate
from histopolation.solver.strategies import AssemblySettings

log = logging.getLogger(__name__)

PRECHECK_LIMIT = 200
CONVERGENCE_HEADER = ("n", "a", "sup_err", "sup_mean_err", "cond_estimate", "jitter_used", "fill", "failed")
CERTIFICATE_HEADER = ("band", "lower", "upper", "minimum", "maximum", "sign", "passed")


def problem_kernel(name: str, shape: float, problem: HistoProblem) -> Kernel:
    """Kernel sized to the first domain of ``problem``."""
    first = problem.domains[0]
    if is_ball(name):
        return create_ball(name, shape, first.radius)
    if problem.dim == 1:
        return create_pair(name, shape, first.widths[0])
    return create_tensor(name, shape, first.widths)


def grid_points(value: str) -> np.ndarray:
    """Points from a CSV table (one column per coordinate) or ``start:stop:count`` axes."""
    if value.lower().endswith(".csv"):
        return load_table(value).rows
    try:
        axes = parse_axes(value)
    except ValueError as ex:
        raise ValidationError(str(ex)) from ex
    if len(axes) == 0:
        raise ValidationError(f'Empty evaluation grid "{value}"')
    lines = [np.linspace(start, stop, count) for start, stop, count in axes]
    mesh = np.meshgrid(*lines, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, len(axes))


def convergence_table(rows: list[ConvergenceRow]) -> Table:
    values = [[row.n, row.a, row.sup_err, row.sup_mean_err, row.cond_estimate, row.jitter_used, row.fill, float(row.failed)] for row in rows]
    return Table(CONVERGENCE_HEADER, np.array(values))


def certificate_table(certificate: SpectralCertificate) -> Table:
    values = [
        [band.index, band.lower, band.upper, band.minimum, band.maximum, band.sign, float(band.passed)]
        for band in certificate.bands
    ]
    return Table(CERTIFICATE_HEADER, np.array(values))


def cardinal_path(out: str) -> str:
    root, extension = os.path.splitext(out)
    return f"{root}_cardinal{extension or '.csv'}"


class ExperimentService(IExperimentService):
    name = "Experiments"

    def __init__(self, config: AppConfig) -> None:
        self.config = config

    @property
    def settings(self) -> AssemblySettings:
        return AssemblySettings.from_config(self.config)

    def _precheck(self, problem: HistoProblem):
        if problem.size > PRECHECK_LIMIT or problem.is_grid:
            return
        result = unisolvence_precheck(problem, self.config.unisolvence_resolution)
        if isinstance(result, UnisolvenceReport) and not result.inconclusive:
            raise ValidationError(f"Averaging functionals are dependent: {result.reason}")

    @execution("Histopolation done", "Histopolate samples")
    def histopolate(self, samples: str, kernel: str, shape: float, eval_grid: str, out: str) -> None:
        problem = load_samples(samples)
        self._precheck(problem)
        h = histopolate(problem, problem_kernel(kernel, shape, problem), self.settings, self.config.jitter_factor)
        points = grid_points(eval_grid)
        if points.shape[1] != problem.dim:
            raise ValidationError(f"Evaluation points of dimension {points.shape[1]} for samples of dimension {problem.dim}")
        values = np.asarray(evaluate(h, points)).reshape(-1, 1)
        header = [f"x{index}" for index in range(1, problem.dim + 1)]
        save_table(Table((*header, "value"), np.hstack([points, values])), out)

    @execution("Convergence run done", "Convergence run")
    def converge(self, kernel: str, function: str, n_list: list[int], width_rule: str, shape: float, out: str) -> None:
        rows = convergence.converge(kernel, function, n_list, WidthRule.parse(width_rule), shape, self.config)
        for row in rows:
            if row.failed:
                log.warning("n = %s flagged: %s", row.n, row.message)
        save_table(convergence_table(rows), out)

    @execution("Kernel table done")
    def kernel_table(self, kernel: str, shape: float, width: float, x_grid: str, out: str) -> None:
        points = grid_points(x_grid)
        save_table(tables.kernel_table(kernel, points[:, 0], shape, width), out)

    @execution("Lagrange table done")
    def lagrange_table(self, kernel: str, shape: float, centers: list[float], width: float, x_grid: str, out: str) -> None:
        points = grid_points(x_grid)
        result = tables.lagrange_table(kernel, centers, width, points[:, 0], shape, config=self.config)
        save_table(result.values, out)
        save_table(result.cardinal, cardinal_path(out))

    @execution("Fourier check done")
    def fourier_check(self, kernel: str, shape: float, width: float, out: str) -> bool:
        pair = create_pair(kernel, shape, width)
        options = {"m": self.config.fourier_samples, "slack": self.config.fourier_slack, "limit": self.config.truncation_radius}
        certificate = certify_averaging(pair, width, bands=self.config.fourier_bands, **options)
        save_table(certificate_table(certificate), out)
        log.info("Averaging kernel %s (a = %s): %s", pair.name, width, certificate.overall.value)
        check = kappa_hat_check(pair, width, **options)
        log.info("Reproducing transform nonnegative: %s (minimum %.3e, deviation %s)", check.passed, check.minimum, check.deviation)
        return certificate.certified and check.passed

    @execution("Image binning done")
    def image_bin(self, image: str, factor: int, out: str) -> None:
        save_image(imaging.image_bin(load_image(image), factor), out)

    @execution("Image upscaling done", "Image upscaling")
    def image_upscale(self, image: str, width: int, height: int, kernel: str, shape: float, mode: str, out: str) -> None:
        try:
            mode = UpscaleMode(mode)
        except ValueError as ex:
            raise ValidationError(f'Unknown upscaling mode "{mode}"') from ex
        grid = load_image(image)
        result = imaging.image_upscale(grid, width, height, kernel, shape, mode, self.config)
        save_image(result, out)

    @execution("Phantom written")
    def image_phantom(self, size: int, out: str) -> None:
        save_image(imaging.phantom(size), out)
