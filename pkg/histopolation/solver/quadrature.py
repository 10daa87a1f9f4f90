"""Quadrature rules over averaging domains and base kernels for the quadrature assembly."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.spatial.distance import cdist

from histopolation.domains.models import Domain
from histopolation.errors import UnsupportedConstructionError, ValidationError
from histopolation.helpers.integrate import gauss_legendre
from histopolation.kernels.ball import BallAveragedKernel
from histopolation.kernels.catalog import Kernel
from histopolation.kernels.pairs import AveragedKernelPair
from histopolation.kernels.profiles import RadialProfile
from histopolation.kernels.tensor import TensorKernel

log = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-12

BaseKernel = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureRule:
    """Shared nodes and, per domain, a normalized nonnegative weight row (sparse)."""

    nodes: np.ndarray
    weights: sparse.csr_array

    def __post_init__(self):
        nodes = np.atleast_2d(np.asarray(self.nodes, dtype=np.float64))
        object.__setattr__(self, "nodes", nodes)
        weights = sparse.csr_array(self.weights)
        object.__setattr__(self, "weights", weights)
        if weights.shape[1] != len(nodes):
            raise ValidationError(f"{weights.shape[1]} weight columns for {len(nodes)} nodes")
        if np.any(weights.data < 0.0):
            raise ValidationError("Quadrature weights must be nonnegative")
        empty = np.flatnonzero(np.diff(weights.indptr) == 0)
        if len(empty) > 0:
            raise ValidationError(f"Domain {empty[0]} has an empty weight vector")
        sums = np.asarray(weights.sum(axis=1)).ravel()
        wrong = np.flatnonzero(np.abs(sums - 1.0) > WEIGHT_TOLERANCE)
        if len(wrong) > 0:
            raise ValidationError(f"Weights of domain {wrong[0]} sum to {sums[wrong[0]]}, expected 1")

    @classmethod
    def from_blocks(cls, points: Sequence[np.ndarray], weights: Sequence[np.ndarray]) -> "QuadratureRule":
        """One node block per domain, each block with its own weights."""
        if len(points) != len(weights):
            raise ValidationError(f"{len(points)} node blocks but {len(weights)} weight blocks")
        rows, columns, data = [], [], []
        offset = 0
        for index, (block, block_weights) in enumerate(zip(points, weights)):
            count = len(block)
            if count != len(block_weights):
                raise ValidationError(f"Domain {index} has {count} nodes but {len(block_weights)} weights")
            rows.extend([index] * count)
            columns.extend(range(offset, offset + count))
            data.extend(np.asarray(block_weights, dtype=np.float64).tolist())
            offset += count
        if offset == 0:
            raise ValidationError("Quadrature rule needs at least one node")
        matrix = sparse.csr_array((data, (rows, columns)), shape=(len(points), offset))
        nodes = np.concatenate([np.atleast_2d(np.asarray(block, dtype=np.float64)).reshape(len(block), -1) for block in points])
        return cls(nodes, matrix)

    @classmethod
    def gauss_legendre(cls, domains: Sequence[Domain], nodes: int) -> "QuadratureRule":
        blocks = [domain_rule(domain, nodes) for domain in domains]
        return cls.from_blocks([block[0] for block in blocks], [block[1] for block in blocks])

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    def domain_nodes(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        start, stop = self.weights.indptr[index], self.weights.indptr[index + 1]
        columns = self.weights.indices[start:stop]
        return self.nodes[columns], self.weights.data[start:stop]


def domain_rule(domain: Domain, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor Gauss–Legendre for boxes, polar product rules for 2D and 3D balls."""
    if nodes < 1:
        raise ValidationError(f"Quadrature needs at least one node per axis, got {nodes}")
    if not domain.is_ball:
        axes = [gauss_legendre(low, high, nodes) for low, high in zip(domain.lower, domain.upper)]
        points = np.stack(np.meshgrid(*[axis[0] for axis in axes], indexing="ij"), axis=-1).reshape(-1, domain.dim)
        weights = np.ones(1)
        for _, axis_weights in axes:
            weights = np.outer(weights, axis_weights).ravel()
        return points, weights
    return _ball_rule(domain, nodes)


def _ball_rule(domain: Domain, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    center = np.asarray(domain.center)
    radius = domain.radius
    if domain.dim == 1:
        points, weights = gauss_legendre(center[0] - radius, center[0] + radius, nodes)
        return points.reshape(-1, 1), weights
    rho, rho_weights = gauss_legendre(0.0, radius, nodes)
    angles = 2.0 * np.pi * (np.arange(2 * nodes) + 0.5) / (2 * nodes)
    if domain.dim == 2:
        r, theta = np.meshgrid(rho, angles, indexing="ij")
        weights = np.outer(rho_weights * rho, np.full(len(angles), 1.0 / len(angles))).ravel()
        points = np.stack([r.ravel() * np.cos(theta.ravel()), r.ravel() * np.sin(theta.ravel())], axis=-1)
    elif domain.dim == 3:
        cosines, cosine_weights = gauss_legendre(-1.0, 1.0, nodes)
        r, c, phi = np.meshgrid(rho, cosines, angles, indexing="ij")
        sine = np.sqrt(1.0 - c**2)
        points = np.stack([(r * sine * np.cos(phi)).ravel(), (r * sine * np.sin(phi)).ravel(), (r * c).ravel()], axis=-1)
        weights = np.einsum("i,j,k->ijk", rho_weights * rho**2, cosine_weights, np.full(len(angles), 1.0 / len(angles))).ravel()
    else:
        raise UnsupportedConstructionError(f"No ball quadrature rule for dimension {domain.dim}")
    return center + points, weights / weights.sum()


def radial_base(profile: RadialProfile) -> BaseKernel:
    def evaluate(first: np.ndarray, second: np.ndarray) -> np.ndarray:
        return profile.phi(cdist(first, second))

    return evaluate


def product_base(profiles: Sequence[RadialProfile]) -> BaseKernel:
    def evaluate(first: np.ndarray, second: np.ndarray) -> np.ndarray:
        values = np.ones((len(first), len(second)))
        for axis, profile in enumerate(profiles):
            values = values * profile.phi(first[:, [axis]] - second[:, axis][np.newaxis, :])
        return values

    return evaluate


def base_kernel(kernel: Kernel | RadialProfile) -> BaseKernel:
    """Point kernel ``Phi`` whose double means give the reproducing kernel of ``kernel``."""
    if isinstance(kernel, RadialProfile):
        return radial_base(kernel)
    if isinstance(kernel, BallAveragedKernel):
        return radial_base(kernel.profile)
    if isinstance(kernel, AveragedKernelPair):
        if kernel.profile is None:
            raise UnsupportedConstructionError("Quadrature assembly needs a generating profile", kernel.name)
        return radial_base(kernel.profile)
    if isinstance(kernel, TensorKernel):
        missing = [factor.name for factor in kernel.factors if factor.profile is None]
        if len(missing) > 0:
            raise UnsupportedConstructionError("Quadrature assembly needs a generating profile per axis", missing[0])
        return product_base([factor.profile for factor in kernel.factors])
    raise UnsupportedConstructionError(f"Unknown kernel type {type(kernel).__name__}")


def has_base_kernel(kernel: Kernel) -> bool:
    if isinstance(kernel, BallAveragedKernel):
        return True
    if isinstance(kernel, AveragedKernelPair):
        return kernel.profile is not None
    return all(factor.profile is not None for factor in kernel.factors)
