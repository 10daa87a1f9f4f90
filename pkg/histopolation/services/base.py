from typing import Protocol

from histopolation.config.app import AppConfig


class IExperimentService(Protocol):
    """One method per command-line experiment; each writes its artifact to ``out``."""

    config: AppConfig

    def histopolate(self, samples: str, kernel: str, shape: float, eval_grid: str, out: str) -> None: ...

    def converge(self, kernel: str, function: str, n_list: list[int], width_rule: str, shape: float, out: str) -> None: ...

    def kernel_table(self, kernel: str, shape: float, width: float, x_grid: str, out: str) -> None: ...

    def lagrange_table(self, kernel: str, shape: float, centers: list[float], width: float, x_grid: str, out: str) -> None: ...

    def fourier_check(self, kernel: str, shape: float, width: float, out: str) -> bool: ...

    def image_bin(self, image: str, factor: int, out: str) -> None: ...

    def image_upscale(self, image: str, width: int, height: int, kernel: str, shape: float, mode: str, out: str) -> None: ...

    def image_phantom(self, size: int, out: str) -> None: ...
