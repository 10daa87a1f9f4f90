"""String-addressable kernel catalog.

Names: ``matern``, ``inverse-quadratic``, ``inverse-multiquadric``, ``mexican-hat``,
``indicator``, ``gauss`` (quadrature only), ``bspline:<n>`` and ``ball:<profile>:<d>``.
"""

import logging
from collections.abc import Callable
from enum import StrEnum

from histopolation.errors import ValidationError
from histopolation.kernels.ball import BallAveragedKernel
from histopolation.kernels.pairs import (
    AveragedKernelPair,
    bspline_kernel_pair,
    indicator_pair,
    inverse_multiquadric_pair,
    inverse_quadratic_pair,
    matern_pair,
    mexican_hat_pair,
    quadrature_pair,
)
from histopolation.kernels.profiles import create_profile, gauss_profile
from histopolation.kernels.tensor import TensorKernel, tensor

log = logging.getLogger(__name__)

Kernel = AveragedKernelPair | TensorKernel | BallAveragedKernel


class KernelName(StrEnum):
    MATERN = "matern"
    INVERSE_QUADRATIC = "inverse-quadratic"
    INVERSE_MULTIQUADRIC = "inverse-multiquadric"
    MEXICAN_HAT = "mexican-hat"
    INDICATOR = "indicator"
    GAUSS = "gauss"
    BSPLINE = "bspline"
    BALL = "ball"


PairBuilder = Callable[[float, float], AveragedKernelPair]


def _gauss_pair(shape: float, a: float) -> AveragedKernelPair:
    return quadrature_pair(gauss_profile(shape), a)


def _indicator(shape: float, a: float) -> AveragedKernelPair:
    return indicator_pair(a)


def pair_mapping() -> dict[KernelName, PairBuilder]:
    return {
        KernelName.MATERN: matern_pair,
        KernelName.INVERSE_QUADRATIC: inverse_quadratic_pair,
        KernelName.INVERSE_MULTIQUADRIC: inverse_multiquadric_pair,
        KernelName.MEXICAN_HAT: mexican_hat_pair,
        KernelName.INDICATOR: _indicator,
        KernelName.GAUSS: _gauss_pair,
    }


def kernel_names() -> list[str]:
    names = [name.value for name in pair_mapping()]
    names.extend(["bspline:<n>", "ball:<profile>:<d>"])
    return names


def _split_name(name: str) -> tuple[KernelName, list[str]]:
    parts = [part.strip() for part in name.strip().lower().split(":")]
    try:
        kind = KernelName(parts[0])
    except ValueError as ex:
        raise ValidationError(f'Unknown kernel "{name}" (known: {", ".join(kernel_names())})') from ex
    return kind, parts[1:]


def _parse_int(value: str, name: str) -> int:
    try:
        return int(value)
    except ValueError as ex:
        raise ValidationError(f'Kernel "{name}" expects an integer parameter, got "{value}"') from ex


def create_pair(name: str, shape: float, width: float) -> AveragedKernelPair:
    """Univariate averaged kernel pair for ``name`` with shape ``lambda`` and segment length ``width``."""
    kind, arguments = _split_name(name)
    if kind == KernelName.BSPLINE:
        if len(arguments) != 1:
            raise ValidationError(f'Kernel "{name}" must be written as bspline:<n>')
        return bspline_kernel_pair(_parse_int(arguments[0], name), width)
    if kind == KernelName.BALL:
        raise ValidationError(f'Kernel "{name}" is a ball kernel and has no univariate pair')
    if len(arguments) > 0:
        raise ValidationError(f'Kernel "{name}" takes no ":" parameters')
    return pair_mapping()[kind](shape, width)


def create_ball(name: str, shape: float, radius: float) -> BallAveragedKernel:
    kind, arguments = _split_name(name)
    if kind != KernelName.BALL or len(arguments) != 2:
        raise ValidationError(f'Kernel "{name}" must be written as ball:<profile>:<d>')
    profile = create_profile(arguments[0], shape)
    return BallAveragedKernel(_parse_int(arguments[1], name), radius, profile)


def is_ball(name: str) -> bool:
    return _split_name(name)[0] == KernelName.BALL


def create_tensor(name: str, shape: float, widths: tuple[float, ...]) -> TensorKernel:
    return tensor([create_pair(name, shape, width) for width in widths])
