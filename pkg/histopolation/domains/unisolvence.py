"""Sufficient check for linear independence of the averaging functionals.

The functionals are independent when the domains can be ordered so that each one
contains an open ball avoiding every later domain.
"""

import logging
from dataclasses import dataclass

import numpy as np

from histopolation.domains.models import Domain, HistoProblem

log = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 64
MAX_CANDIDATES = 250_000
VERIFY_SLACK = 1e-12


@dataclass(frozen=True)
class OpenBall:
    center: tuple[float, ...]
    radius: float


@dataclass(frozen=True)
class UnisolvenceWitness:
    """Sample indices in witness order and, per position, the separating open ball."""

    order: tuple[int, ...]
    balls: tuple[OpenBall, ...]

    @property
    def is_witness(self) -> bool:
        return True


@dataclass(frozen=True)
class UnisolvenceReport:
    """``position`` is 1-based; ``domain_index`` names the first domain that admits no ball."""

    position: int
    domain_index: int
    reason: str
    inconclusive: bool

    @property
    def is_witness(self) -> bool:
        return False


UnisolvenceResult = UnisolvenceWitness | UnisolvenceReport


def _uniform_segments(problem: HistoProblem) -> bool:
    if problem.dim != 1 or not problem.is_uniform():
        return False
    centers = problem.centers[:, 0]
    return len(np.unique(centers)) == len(centers)


def _segment_witness(problem: HistoProblem) -> UnisolvenceWitness:
    centers = problem.centers[:, 0]
    half = problem.domains[0].half_widths[0]
    order = np.argsort(centers, kind="stable")
    gaps = np.diff(centers[order])
    epsilon = half if len(gaps) == 0 else min(float(np.min(gaps)) / 2.0, half)
    balls = tuple(OpenBall((float(centers[index]) - half + epsilon,), epsilon) for index in order)
    return UnisolvenceWitness(tuple(int(index) for index in order), balls)


def _candidates(domain: Domain, resolution: int) -> np.ndarray:
    per_axis = max(2, min(resolution, int(MAX_CANDIDATES ** (1.0 / domain.dim))))
    offsets = (2.0 * (np.arange(per_axis) + 0.5) / per_axis) - 1.0
    axes = [center + half * offsets for center, half in zip(domain.center, domain.half_widths)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, domain.dim)
    return mesh[domain.depth_of(mesh) > 0.0]


def _separating_ball(domain: Domain, others: list[Domain], resolution: int) -> OpenBall | None:
    points = _candidates(domain, resolution)
    if len(points) == 0:
        return None
    clearance = domain.depth_of(points)
    for other in others:
        clearance = np.minimum(clearance, other.distance_to(points))
    best = int(np.argmax(clearance))
    if not clearance[best] > 0.0:
        return None
    return OpenBall(tuple(float(value) for value in points[best]), 0.5 * float(clearance[best]))


def unisolvence_precheck(problem: HistoProblem, resolution: int = DEFAULT_RESOLUTION) -> UnisolvenceResult:
    """Ordering witness for independence, or a report naming the first irreducible domain.

    A failed grid search is inconclusive; only exact duplicates are reported conclusively.
    """
    if _uniform_segments(problem):
        return _segment_witness(problem)
    remaining = list(range(problem.size))
    domains = problem.domains
    order: list[int] = []
    balls: list[OpenBall] = []
    while len(remaining) > 0:
        chosen = None
        for index in remaining:
            others = [domains[other] for other in remaining if other != index]
            ball = _separating_ball(domains[index], others, resolution)
            if ball is not None:
                chosen = (index, ball)
                break
        if chosen is None:
            return _failure(problem, remaining, len(order) + 1)
        order.append(chosen[0])
        balls.append(chosen[1])
        remaining.remove(chosen[0])
    return UnisolvenceWitness(tuple(order), tuple(balls))


def _failure(problem: HistoProblem, remaining: list[int], position: int) -> UnisolvenceReport:
    domains = problem.domains
    first = remaining[0]
    duplicate = any(domains[first] == domains[other] for other in remaining[1:])
    if duplicate:
        reason = f"domain {first} is duplicated by a later domain"
        return UnisolvenceReport(position, first, reason, inconclusive=False)
    reason = f"no separating ball found for domain {first} at the search resolution"
    log.warning("Unisolvence check inconclusive at position %s: %s", position, reason)
    return UnisolvenceReport(position, first, reason, inconclusive=True)


def verify_witness(problem: HistoProblem, witness: UnisolvenceWitness) -> bool:
    """Checks each ball lies inside its domain and is disjoint from every later domain."""
    domains = problem.domains
    for position, (index, ball) in enumerate(zip(witness.order, witness.balls)):
        center = np.asarray(ball.center)
        slack = VERIFY_SLACK * max(1.0, ball.radius)
        if not domains[index].depth_of(center) >= ball.radius - slack:
            return False
        for later in witness.order[position + 1 :]:
            if not domains[later].distance_to(center) >= ball.radius - slack:
                return False
    return True
