"""Pixel binning and histopolation-based upscaling of grayscale images.

Images live on the unit square: pixel ``(i, j)`` of a ``W x H`` image is the average over
the cell ``[j/W, (j+1)/W] x [i/H, (i+1)/H]``, rows top to bottom.
"""

import logging
from dataclasses import dataclass
from datetime import datetime
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike

from histopolation.config.app import AppConfig
from histopolation.domains.models import HistoProblem
from histopolation.errors import ValidationError
from histopolation.helpers.logs import log_time
from histopolation.kernels.catalog import KernelName, create_tensor
from histopolation.solver.histopolant import evaluate_grid, evaluate_mean_grid, histopolate
from histopolation.solver.strategies import AssemblySettings

log = logging.getLogger(__name__)

PHANTOM_SIZE = 256


class UpscaleMode(StrEnum):
    POINTWISE = "pointwise"
    CELL_AVERAGE = "cellavg"


@dataclass(frozen=True)
class ImageGrid:
    """Row-major pixel averages of shape ``(height, width)``; unclamped until written."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.size == 0:
            raise ValidationError(f"Image values must be a non-empty 2D array, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("Image values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> "ImageGrid":
        return cls(np.full((height, width), float(value)))

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def cell_size(self) -> tuple[float, float]:
        return 1.0 / self.width, 1.0 / self.height

    @property
    def x_centers(self) -> np.ndarray:
        return (np.arange(self.width) + 0.5) / self.width

    @property
    def y_centers(self) -> np.ndarray:
        return (np.arange(self.height) + 0.5) / self.height

    def clamped(self) -> "ImageGrid":
        return ImageGrid(np.clip(self.values, 0.0, 1.0))

    def as_problem(self) -> HistoProblem:
        cell_x, cell_y = self.cell_size
        return HistoProblem.grid(self.x_centers, 0.5 * cell_x, self.y_centers, 0.5 * cell_y, self.values)


def image_bin(grid: ImageGrid, factor: int) -> ImageGrid:
    """Replaces each ``factor x factor`` block by its mean."""
    if factor < 1:
        raise ValidationError(f"Binning factor must be positive, got {factor}")
    if grid.width % factor != 0 or grid.height % factor != 0:
        raise ValidationError(f"Binning factor {factor} does not divide {grid.width}x{grid.height}")
    blocks = grid.values.reshape(grid.height // factor, factor, grid.width // factor, factor)
    return ImageGrid(blocks.mean(axis=(1, 3)))


def image_upscale(
    grid: ImageGrid,
    width: int,
    height: int,
    kernel_name: str = KernelName.MATERN.value,
    shape: float = 1.0,
    mode: UpscaleMode = UpscaleMode.POINTWISE,
    config: AppConfig | None = None,
) -> ImageGrid:
    """Histopolates the pixel averages with a product kernel and resamples on a ``width x height`` grid.

    ``pointwise`` evaluates ``s_f`` at the target cell centers, ``cellavg`` takes exact means
    over the target cells. The result is clamped to ``[0, 1]``.
    """
    if width < 1 or height < 1:
        raise ValidationError(f"Target dimensions must be positive, got {width}x{height}")
    config = config or AppConfig()
    start = datetime.now()
    kernel = create_tensor(kernel_name, shape, grid.cell_size)
    h = histopolate(grid.as_problem(), kernel, AssemblySettings.from_config(config), config.jitter_factor)
    target = ImageGrid.constant(width, height, 0.0)
    if UpscaleMode(mode) == UpscaleMode.CELL_AVERAGE:
        cell_x, cell_y = target.cell_size
        values = evaluate_mean_grid(h, target.x_centers, cell_x, target.y_centers, cell_y)
    else:
        values = evaluate_grid(h, target.x_centers, target.y_centers)
    log.info(log_time(f"Upscaled {grid.width}x{grid.height} to {width}x{height} ({UpscaleMode(mode).value})", start))
    return ImageGrid(values).clamped()


def nearest_upscale(grid: ImageGrid, width: int, height: int) -> ImageGrid:
    """Nearest-neighbor baseline: each target cell takes the source pixel under its center."""
    columns = np.minimum((np.arange(width) + 0.5) * grid.width / width, grid.width - 1).astype(int)
    rows = np.minimum((np.arange(height) + 0.5) * grid.height / height, grid.height - 1).astype(int)
    return ImageGrid(grid.values[np.ix_(rows, columns)])


def rmse(first: ImageGrid | ArrayLike, second: ImageGrid | ArrayLike) -> float:
    first = first.values if isinstance(first, ImageGrid) else np.asarray(first, dtype=np.float64)
    second = second.values if isinstance(second, ImageGrid) else np.asarray(second, dtype=np.float64)
    if first.shape != second.shape:
        raise ValidationError(f"Cannot compare images of shape {first.shape} and {second.shape}")
    return float(np.sqrt(np.mean((first - second) ** 2)))


# (center x, center y, semi-axis x, semi-axis y, rotation in degrees, added intensity)
PHANTOM_ELLIPSES = (
    (0.0, 0.0, 0.69, 0.92, 0.0, 0.8),
    (0.0, -0.0184, 0.6624, 0.874, 0.0, -0.6),
    (0.22, 0.0, 0.11, 0.31, -18.0, -0.15),
    (-0.22, 0.0, 0.16, 0.41, 18.0, -0.15),
    (0.0, 0.35, 0.21, 0.25, 0.0, 0.25),
    (0.0, 0.1, 0.046, 0.046, 0.0, 0.2),
    (0.0, -0.1, 0.046, 0.046, 0.0, 0.2),
    (-0.08, -0.605, 0.046, 0.023, 0.0, 0.2),
    (0.0, -0.605, 0.023, 0.023, 0.0, 0.2),
    (0.06, -0.605, 0.023, 0.046, 0.0, 0.2),
)


def phantom(size: int = PHANTOM_SIZE) -> ImageGrid:
    """Deterministic head-like test image of nested ellipses on a smooth background."""
    if size < 2:
        raise ValidationError(f"Phantom size must be at least 2, got {size}")
    axis = 2.0 * (np.arange(size) + 0.5) / size - 1.0
    x, y = np.meshgrid(axis, -axis)
    values = 0.05 * (1.0 + x)
    for cx, cy, ax, ay, degrees, intensity in PHANTOM_ELLIPSES:
        theta = np.deg2rad(degrees)
        u = (x - cx) * np.cos(theta) + (y - cy) * np.sin(theta)
        v = -(x - cx) * np.sin(theta) + (y - cy) * np.cos(theta)
        values = values + intensity * ((u / ax) ** 2 + (v / ay) ** 2 <= 1.0)
    return ImageGrid(np.clip(values, 0.0, 1.0))
