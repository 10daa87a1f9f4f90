"""Sampled Fourier-side certification of univariate averaging kernels.

``alpha`` generates a uniform averaging kernel for segments of length ``a`` when its
transform alternates in sign on the bands ``[k 2pi/a, (k+1) 2pi/a]``: nonnegative for even
``k``, nonpositive for odd ``k``. Then ``kappa^ = alpha^ (2/(a s)) sin(a s/2)`` is
nonnegative. Sampling on a finite grid is evidence, never a proof.

Transforms use the symmetric convention ``f^(s) = (2 pi)^(-1/2) int f(x) exp(-i s x) dx``.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from histopolation.errors import ValidationError
from histopolation.helpers.integrate import cosine_quad
from histopolation.kernels.pairs import AveragedKernelPair

log = logging.getLogger(__name__)

TRUNCATION_RADIUS = 200.0
TAIL_TOLERANCE = 1e-12
MIN_BANDS = 4
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

EvenFunction = Callable[[float], float] | AveragedKernelPair


class CertificateStatus(StrEnum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BandResult:
    index: int
    lower: float
    upper: float
    minimum: float
    maximum: float
    sign: int
    passed: bool


@dataclass(frozen=True)
class SpectralCertificate:
    width: float
    bands: tuple[BandResult, ...]
    overall: CertificateStatus
    tolerance: float

    @property
    def certified(self) -> bool:
        return self.overall == CertificateStatus.CERTIFIED

    def first_failure(self) -> BandResult | None:
        return next((band for band in self.bands if not band.passed), None)


@dataclass(frozen=True)
class TransformSamples:
    frequencies: np.ndarray
    values: np.ndarray
    radius: float


@dataclass(frozen=True)
class KappaCheck:
    passed: bool
    minimum: float
    tolerance: float
    deviation: float | None = None


def _scalar_function(alpha: EvenFunction) -> tuple[Callable[[float], float], tuple[float, ...]]:
    if isinstance(alpha, AveragedKernelPair):
        return (lambda x: float(alpha.alpha_function(np.float64(x)))), alpha.breakpoints
    return (lambda x: float(alpha(x))), ()


def truncation_radius(func: Callable[[float], float], a: float, limit: float = TRUNCATION_RADIUS) -> float:
    """Doubles ``R`` from ``a`` until ``func`` is negligible on ``[R, 2R]``, capped at ``limit``."""
    scale = max(abs(func(0.0)), np.finfo(np.float64).tiny)
    radius = float(a)
    while radius < limit:
        probe = np.linspace(radius, 2.0 * radius, 33)
        if max(abs(func(float(x))) for x in probe) <= TAIL_TOLERANCE * scale:
            return radius
        radius *= 2.0
    return float(limit)


def _cosine_transform(func: Callable[[float], float], pieces: list[float], frequency: float) -> float:
    total = sum(cosine_quad(func, lower, upper, frequency) for lower, upper in zip(pieces[:-1], pieces[1:]))
    return 2.0 * total / SQRT_TWO_PI


def transform_samples(
    alpha: EvenFunction,
    a: float,
    s_max: float,
    m: int,
    radius: float | None = None,
    limit: float = TRUNCATION_RADIUS,
) -> TransformSamples:
    """``alpha^`` at ``m`` uniform frequencies in ``[0, s_max]`` via the cosine transform of the even ``alpha``."""
    if not (a > 0 and s_max > 0 and m >= 2):
        raise ValidationError(f"Need a > 0, s_max > 0 and m >= 2, got a={a}, s_max={s_max}, m={m}")
    func, breakpoints = _scalar_function(alpha)
    radius = radius or truncation_radius(func, a, limit)
    pieces = sorted({0.0, radius, *(point for point in breakpoints if 0.0 < point < radius)})
    frequencies = np.linspace(0.0, s_max, m)
    values = np.array([_cosine_transform(func, pieces, float(s)) for s in frequencies])
    log.debug("Transform sampled at %s frequencies up to %.3f (R = %.1f)", m, s_max, radius)
    return TransformSamples(frequencies, values, radius)


def band_sign(index: int) -> int:
    return 1 if index % 2 == 0 else -1


def certify_samples(samples: TransformSamples, a: float, slack: float = 1e-9) -> SpectralCertificate:
    period = 2.0 * math.pi / a
    s_max = float(samples.frequencies[-1])
    count = int(math.ceil(s_max / period - 1e-12))
    if count < MIN_BANDS:
        raise ValidationError(f"Sampling up to s={s_max} covers {count} bands, need {MIN_BANDS}")
    tolerance = slack * float(np.max(np.abs(samples.values)))
    bands = []
    for index in range(count):
        lower, upper = index * period, (index + 1) * period
        inside = (samples.frequencies >= lower) & (samples.frequencies <= upper)
        if not np.any(inside):
            continue
        values = samples.values[inside]
        sign = band_sign(index)
        passed = bool(np.min(values) >= -tolerance) if sign > 0 else bool(np.max(values) <= tolerance)
        bands.append(BandResult(index, lower, min(upper, s_max), float(np.min(values)), float(np.max(values)), sign, passed))
    overall = CertificateStatus.CERTIFIED if all(band.passed for band in bands) else CertificateStatus.REFUTED
    if overall == CertificateStatus.REFUTED:
        log.info("Averaging kernel refuted in band %s", next(band.index for band in bands if not band.passed))
    return SpectralCertificate(float(a), tuple(bands), overall, tolerance)


def certify_averaging(
    alpha: EvenFunction,
    a: float,
    s_max: float | None = None,
    m: int = 4096,
    slack: float = 1e-9,
    bands: int = 8,
    limit: float = TRUNCATION_RADIUS,
) -> SpectralCertificate:
    """Checks the alternating band signs of ``alpha^`` within ``slack * max|alpha^|``."""
    s_max = s_max or bands * 2.0 * math.pi / a
    return certify_samples(transform_samples(alpha, a, s_max, m, limit=limit), a, slack)


def _kappa_function(pair: AveragedKernelPair) -> Callable[[float], float]:
    def kappa(x: float) -> float:
        return float(pair.kappa_function(np.float64(x)))

    return kappa


def sinc_factor(frequencies: np.ndarray, a: float) -> np.ndarray:
    """``(2/(a s)) sin(a s/2)`` with the limit 1 at ``s = 0``."""
    return np.sinc(a * np.asarray(frequencies) / (2.0 * math.pi))


def kappa_hat_check(
    alpha: EvenFunction,
    a: float,
    s_max: float | None = None,
    m: int = 4096,
    slack: float = 1e-9,
    kappa: Callable[[float], float] | None = None,
    agreement: float = 1e-6,
    limit: float = TRUNCATION_RADIUS,
) -> KappaCheck:
    """Nonnegativity of ``kappa^ = alpha^ sinc``; cross-checked against the direct transform of ``kappa`` when known."""
    s_max = s_max or 8 * 2.0 * math.pi / a
    samples = transform_samples(alpha, a, s_max, m, limit=limit)
    kappa_hat = samples.values * sinc_factor(samples.frequencies, a)
    tolerance = slack * float(np.max(np.abs(samples.values)))
    minimum = float(np.min(kappa_hat))
    passed = minimum >= -tolerance
    if kappa is None and isinstance(alpha, AveragedKernelPair):
        kappa = _kappa_function(alpha)
    deviation = None
    if kappa is not None:
        direct = transform_samples(kappa, a, s_max, m, radius=samples.radius + a)
        deviation = float(np.max(np.abs(direct.values - kappa_hat)))
        passed = passed and deviation <= agreement
    return KappaCheck(passed, minimum, tolerance, deviation)
