import logging
import math

import numpy as np
from scipy.spatial import cKDTree

from histopolation.domains.models import Domain, HistoProblem
from histopolation.errors import ValidationError
from histopolation.kernels.special import reg_inc_beta

log = logging.getLogger(__name__)

MONTE_CARLO_POINTS = 200_000
MONTE_CARLO_SEED = 20240101


def _check_dims(first: Domain, second: Domain):
    if first.dim != second.dim:
        raise ValidationError(f"Domains of dimension {first.dim} and {second.dim} cannot be compared")


def _box_overlap(first: Domain, second: Domain) -> float:
    lower = np.maximum(first.lower, second.lower)
    upper = np.minimum(first.upper, second.upper)
    return float(np.prod(np.maximum(upper - lower, 0.0)))


def ball_volume(dim: int, radius: float) -> float:
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * radius**dim


def cap_volume(dim: int, radius: float, height: float) -> float:
    """Volume of the cap of height ``height`` cut from a ball of radius ``radius``."""
    if height <= 0.0:
        return 0.0
    if height >= 2.0 * radius:
        return ball_volume(dim, radius)
    if height > radius:
        return ball_volume(dim, radius) - cap_volume(dim, radius, 2.0 * radius - height)
    z = (2.0 * radius * height - height * height) / radius**2
    return 0.5 * ball_volume(dim, radius) * float(reg_inc_beta(min(z, 1.0), 0.5 * (dim + 1), 0.5))


def _lens_2d(r1: float, r2: float, distance: float) -> float:
    first = r1**2 * math.acos((distance**2 + r1**2 - r2**2) / (2.0 * distance * r1))
    second = r2**2 * math.acos((distance**2 + r2**2 - r1**2) / (2.0 * distance * r2))
    area = (-distance + r1 + r2) * (distance + r1 - r2) * (distance - r1 + r2) * (distance + r1 + r2)
    return first + second - 0.5 * math.sqrt(max(area, 0.0))


def _lens_3d(r1: float, r2: float, distance: float) -> float:
    return math.pi * (r1 + r2 - distance) ** 2 * (distance**2 + 2.0 * distance * (r1 + r2) - 3.0 * (r1 - r2) ** 2) / (12.0 * distance)


def _ball_overlap(first: Domain, second: Domain) -> float:
    r1, r2 = first.radius, second.radius
    distance = float(np.linalg.norm(np.asarray(first.center) - np.asarray(second.center)))
    dim = first.dim
    if distance >= r1 + r2:
        return 0.0
    if distance <= abs(r1 - r2):
        return ball_volume(dim, min(r1, r2))
    if dim == 1:
        return r1 + r2 - distance
    if dim == 2:
        return _lens_2d(r1, r2, distance)
    if dim == 3:
        return _lens_3d(r1, r2, distance)
    plane = (distance**2 + r1**2 - r2**2) / (2.0 * distance)
    return cap_volume(dim, r1, r1 - plane) + cap_volume(dim, r2, r2 - (distance - plane))


def _mixed_overlap(first: Domain, second: Domain, points: int, seed: int) -> float:
    lower = np.maximum(first.lower, second.lower)
    upper = np.minimum(first.upper, second.upper)
    if np.any(upper <= lower):
        return 0.0
    rng = np.random.default_rng(seed)
    samples = rng.uniform(lower, upper, size=(points, first.dim))
    inside = first.contains(samples) & second.contains(samples)
    return float(np.prod(upper - lower) * np.mean(inside))


def overlap_measure(first: Domain, second: Domain, points: int = MONTE_CARLO_POINTS, seed: int = MONTE_CARLO_SEED) -> float:
    """Lebesgue measure of ``first`` intersected with ``second``.

    Exact for boxes and balls; a ball against a box is estimated by seeded Monte Carlo.
    """
    _check_dims(first, second)
    if not first.is_ball and not second.is_ball:
        return _box_overlap(first, second)
    if first.is_ball and second.is_ball:
        return _ball_overlap(first, second)
    return _mixed_overlap(first, second, points, seed)


def _region_grid(region: Domain, points: int) -> np.ndarray:
    per_axis = max(1, int(round(points ** (1.0 / region.dim)))) + 1
    axes = [np.linspace(low, high, per_axis) for low, high in zip(region.lower, region.upper)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, region.dim)
    return mesh[region.contains(mesh)]


def fill_distance(problem: HistoProblem, region: Domain, points: int = 1000) -> float:
    """Largest distance of a grid point of ``region`` to the nearest domain center.

    The grid splits each axis of the bounding box into ``points ** (1/d)`` intervals.
    """
    _check_dims(problem.domains[0], region)
    grid = _region_grid(region, points)
    distances, _ = cKDTree(problem.centers).query(grid)
    return float(np.max(distances))
