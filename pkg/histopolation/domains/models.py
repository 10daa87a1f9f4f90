import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike

from histopolation.errors import ValidationError

log = logging.getLogger(__name__)


class DomainKind(StrEnum):
    SEGMENT = "segment"
    BOX = "box"
    BALL = "ball"


def _floats(values: Iterable[float]) -> tuple[float, ...]:
    return tuple(float(value) for value in values)


@dataclass(frozen=True)
class Domain:
    """Averaging region: a segment, an axis-aligned box or a ball.

    ``extent`` holds the per-axis half-widths of segments and boxes, and the
    single radius of a ball.
    """

    kind: DomainKind
    center: tuple[float, ...]
    extent: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", DomainKind(self.kind))
        object.__setattr__(self, "center", _floats(self.center))
        object.__setattr__(self, "extent", _floats(self.extent))
        if len(self.center) == 0:
            raise ValidationError("Domain center must have at least one coordinate")
        if not all(math.isfinite(value) for value in self.center):
            raise ValidationError(f"Domain center must be finite, got {self.center}")
        expected = 1 if self.kind == DomainKind.BALL else len(self.center)
        if len(self.extent) != expected:
            raise ValidationError(f"{self.kind.value} of dimension {len(self.center)} needs {expected} extent value(s), got {len(self.extent)}")
        if self.kind == DomainKind.SEGMENT and len(self.center) != 1:
            raise ValidationError("Segments are one-dimensional, use a box instead")
        if not all(value > 0 and math.isfinite(value) for value in self.extent):
            raise ValidationError(f"Domain extent must be positive, got {self.extent}")

    @classmethod
    def segment(cls, center: float, half_width: float) -> "Domain":
        return cls(DomainKind.SEGMENT, (center,), (half_width,))

    @classmethod
    def interval(cls, lower: float, upper: float) -> "Domain":
        return cls.segment(0.5 * (lower + upper), 0.5 * (upper - lower))

    @classmethod
    def box(cls, center: Sequence[float], half_widths: Sequence[float]) -> "Domain":
        return cls(DomainKind.BOX, tuple(center), tuple(half_widths))

    @classmethod
    def ball(cls, center: Sequence[float], radius: float) -> "Domain":
        return cls(DomainKind.BALL, tuple(center), (radius,))

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def is_ball(self) -> bool:
        return self.kind == DomainKind.BALL

    @property
    def radius(self) -> float:
        if not self.is_ball:
            raise ValidationError(f"{self.kind.value} has no radius")
        return self.extent[0]

    @property
    def half_widths(self) -> tuple[float, ...]:
        """Per-axis half-widths of the bounding box."""
        if self.is_ball:
            return self.extent * self.dim
        return self.extent

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(2.0 * value for value in self.half_widths)

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.center) - np.asarray(self.half_widths)

    @property
    def upper(self) -> np.ndarray:
        return np.asarray(self.center) + np.asarray(self.half_widths)

    def measure(self) -> float:
        if self.is_ball:
            d = self.dim
            return math.pi ** (d / 2) / math.gamma(d / 2 + 1) * self.radius**d
        return math.prod(self.widths)

    def shape_key(self) -> tuple[DomainKind, tuple[float, ...]]:
        """Domains with equal keys are translates of each other."""
        kind = DomainKind.BOX if self.kind == DomainKind.SEGMENT else self.kind
        return kind, self.extent

    def contains(self, points: ArrayLike) -> np.ndarray:
        """Closed-set membership of ``points`` (shape ``(..., dim)``)."""
        offset = np.asarray(points, dtype=np.float64) - np.asarray(self.center)
        if self.is_ball:
            return np.linalg.norm(offset, axis=-1) <= self.radius
        return np.all(np.abs(offset) <= np.asarray(self.extent), axis=-1)

    def distance_to(self, points: ArrayLike) -> np.ndarray:
        """Euclidean distance of ``points`` to the closed domain (0 inside)."""
        offset = np.asarray(points, dtype=np.float64) - np.asarray(self.center)
        if self.is_ball:
            return np.maximum(np.linalg.norm(offset, axis=-1) - self.radius, 0.0)
        excess = np.maximum(np.abs(offset) - np.asarray(self.extent), 0.0)
        return np.linalg.norm(excess, axis=-1)

    def depth_of(self, points: ArrayLike) -> np.ndarray:
        """Distance of interior ``points`` to the boundary; nonpositive outside."""
        offset = np.asarray(points, dtype=np.float64) - np.asarray(self.center)
        if self.is_ball:
            return self.radius - np.linalg.norm(offset, axis=-1)
        return np.min(np.asarray(self.extent) - np.abs(offset), axis=-1)

    def translated(self, center: Sequence[float]) -> "Domain":
        return Domain(self.kind, tuple(center), self.extent)


@dataclass(frozen=True)
class AverageSample:
    domain: Domain
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not math.isfinite(self.value):
            raise ValidationError(f"Average value must be finite, got {self.value}")


@dataclass(frozen=True)
class HistoProblem:
    """Ordered average samples sharing one dimension.

    ``grid_shape`` declares the samples as the row-major cells ``(rows, columns)`` of
    a tensor grid of boxes, which enables the Kronecker solve.
    """

    samples: tuple[AverageSample, ...]
    grid_shape: tuple[int, int] | None = None
    allow_duplicates: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if len(self.samples) == 0:
            raise ValidationError("Histopolation problem needs at least one sample")
        dims = {sample.domain.dim for sample in self.samples}
        if len(dims) > 1:
            raise ValidationError(f"All domains must share one dimension, got {sorted(dims)}")
        if self.grid_shape is not None:
            self._validate_grid()
        if not self.allow_duplicates:
            duplicates = self.duplicate_pairs()
            if len(duplicates) > 0:
                first, second = duplicates[0]
                raise ValidationError(f"Domains {first} and {second} are identical")

    def _validate_grid(self):
        rows, columns = self.grid_shape
        if self.dim != 2 or rows * columns != len(self.samples):
            raise ValidationError(f"Grid shape {self.grid_shape} does not match {len(self.samples)} samples of dimension {self.dim}")
        if any(sample.domain.is_ball for sample in self.samples):
            raise ValidationError("Grid problems consist of boxes")

    @classmethod
    def from_domains(cls, domains: Sequence[Domain], values: ArrayLike, **kwargs) -> "HistoProblem":
        values = np.asarray(values, dtype=np.float64).ravel()
        if len(domains) != len(values):
            raise ValidationError(f"{len(domains)} domains but {len(values)} values")
        samples = tuple(AverageSample(domain, value) for domain, value in zip(domains, values))
        return cls(samples, **kwargs)

    @classmethod
    def grid(cls, x_centers: ArrayLike, x_half: float, y_centers: ArrayLike, y_half: float, values: ArrayLike) -> "HistoProblem":
        """Box cells ``values[i, j]`` centered at ``(x_centers[j], y_centers[i])``."""
        x_centers = np.asarray(x_centers, dtype=np.float64)
        y_centers = np.asarray(y_centers, dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (len(y_centers), len(x_centers)):
            raise ValidationError(f"Grid values of shape {values.shape} do not match {len(y_centers)}x{len(x_centers)} cells")
        domains = [Domain.box((x, y), (x_half, y_half)) for y in y_centers for x in x_centers]
        return cls.from_domains(domains, values, grid_shape=values.shape)

    @property
    def dim(self) -> int:
        return self.samples[0].domain.dim

    @property
    def size(self) -> int:
        return len(self.samples)

    @property
    def domains(self) -> list[Domain]:
        return [sample.domain for sample in self.samples]

    @property
    def values(self) -> np.ndarray:
        return np.array([sample.value for sample in self.samples])

    @property
    def centers(self) -> np.ndarray:
        return np.array([sample.domain.center for sample in self.samples])

    @property
    def is_grid(self) -> bool:
        return self.grid_shape is not None

    def is_uniform(self) -> bool:
        """True when all domains are translates of one domain."""
        return len({domain.shape_key() for domain in self.domains}) == 1

    def duplicate_pairs(self) -> list[tuple[int, int]]:
        seen: dict[Domain, int] = {}
        pairs = []
        for index, domain in enumerate(self.domains):
            if domain in seen:
                pairs.append((seen[domain], index))
            else:
                seen[domain] = index
        return pairs

    def axis_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct ``(y, x)`` centers of a grid problem in cell order."""
        if self.grid_shape is None:
            raise ValidationError("Problem is not declared as a grid")
        rows, columns = self.grid_shape
        centers = self.centers.reshape(rows, columns, 2)
        return centers[:, 0, 1], centers[0, :, 0]

    def grid_values(self) -> np.ndarray:
        if self.grid_shape is None:
            raise ValidationError("Problem is not declared as a grid")
        return self.values.reshape(self.grid_shape)

    def with_values(self, values: ArrayLike) -> "HistoProblem":
        return HistoProblem.from_domains(self.domains, values, grid_shape=self.grid_shape, allow_duplicates=self.allow_duplicates)

    def permuted(self, order: Sequence[int]) -> "HistoProblem":
        samples = tuple(self.samples[index] for index in order)
        return HistoProblem(samples, allow_duplicates=self.allow_duplicates)


def uniform_segments(centers: ArrayLike, a: float, values: ArrayLike | None = None) -> HistoProblem:
    centers = np.asarray(centers, dtype=np.float64)
    if values is None:
        values = np.zeros(len(centers))
    domains = [Domain.segment(center, 0.5 * a) for center in centers]
    return HistoProblem.from_domains(domains, values)


def equispaced_centers(n: int, lower: float = -1.0, upper: float = 1.0) -> np.ndarray:
    """``n`` centers ``lower + (upper - lower)(i - 1)/(n - 1)``; the midpoint for ``n = 1``."""
    if n < 1:
        raise ValidationError(f"Need at least one center, got {n}")
    if n == 1:
        return np.array([0.5 * (lower + upper)])
    return np.linspace(lower, upper, n)
