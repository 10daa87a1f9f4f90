import logging
from enum import StrEnum
from typing import Any

from histopolation.config.base import Config
from histopolation.data.json_source import JsonSource
from histopolation.errors import ValidationError
from histopolation.helpers.resource import app_config_template_file
from histopolation.interfaces.factory import FileFactory
from histopolation.interfaces.path import JsonFile

log = logging.getLogger(__name__)


class AppConfigs(StrEnum):
    QUADRATURE_NODES = "quadrature_nodes"
    JITTER_FACTOR = "jitter_factor"
    DENSE_LIMIT = "dense_limit"
    AVERAGE_TOLERANCE = "average_tolerance"
    FILL_POINTS = "fill_points"
    UNISOLVENCE_RESOLUTION = "unisolvence_resolution"
    FOURIER_SAMPLES = "fourier_samples"
    FOURIER_BANDS = "fourier_bands"
    FOURIER_SLACK = "fourier_slack"
    TRUNCATION_RADIUS = "truncation_radius"
    MEAN_ERROR_POINTS = "mean_error_points"
    MAX_WORKERS = "max_workers"


INTEGER_KEYS = (
    AppConfigs.QUADRATURE_NODES,
    AppConfigs.DENSE_LIMIT,
    AppConfigs.FILL_POINTS,
    AppConfigs.UNISOLVENCE_RESOLUTION,
    AppConfigs.FOURIER_SAMPLES,
    AppConfigs.FOURIER_BANDS,
    AppConfigs.MEAN_ERROR_POINTS,
    AppConfigs.MAX_WORKERS,
)


class AppConfig(Config):
    """Numerical knobs shared by assembly, solver, diagnostics and experiments."""

    def __init__(
        self,
        quadrature_nodes: int = 32,
        jitter_factor: float = 1e-12,
        dense_limit: int = 4096,
        average_tolerance: float = 1e-10,
        fill_points: int = 1000,
        unisolvence_resolution: int = 64,
        fourier_samples: int = 4096,
        fourier_bands: int = 8,
        fourier_slack: float = 1e-9,
        truncation_radius: float = 200.0,
        mean_error_points: int = 1000,
        max_workers: int = 4,
    ) -> None:
        super().__init__()
        self.quadrature_nodes = quadrature_nodes
        self.jitter_factor = jitter_factor
        self.dense_limit = dense_limit
        self.average_tolerance = average_tolerance
        self.fill_points = fill_points
        self.unisolvence_resolution = unisolvence_resolution
        self.fourier_samples = fourier_samples
        self.fourier_bands = fourier_bands
        self.fourier_slack = fourier_slack
        self.truncation_radius = truncation_radius
        self.mean_error_points = mean_error_points
        self.max_workers = max_workers

    def validate(self):
        for key in AppConfigs:
            value = getattr(self, key.value)
            if value <= 0:
                raise ValidationError(f'Config value "{key.value}" must be positive, got {value}')
        if self.fourier_bands < 4:
            raise ValidationError("Config value \"fourier_bands\" must cover at least 4 bands")

    def as_dict(self) -> dict[str, Any]:
        return {key.value: getattr(self, key.value) for key in AppConfigs}


def _convert(key: AppConfigs, value: Any) -> int | float:
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ValidationError(f'Config value "{key.value}" must be numeric, got {value!r}')
    if key in INTEGER_KEYS:
        if int(value) != value:
            raise ValidationError(f'Config value "{key.value}" must be an integer, got {value!r}')
        return int(value)
    return float(value)


class AppConfigFactory(FileFactory[JsonFile, AppConfig]):
    def __init__(self, source: JsonSource | None = None) -> None:
        self.source = source or JsonSource()

    def template_content(self) -> dict[str, Any]:
        return self.source.read(app_config_template_file())

    def merge(self, content: dict[str, Any]) -> dict[str, Any]:
        merged = self.template_content()
        for key, value in content.items():
            if key not in {item.value for item in AppConfigs}:
                log.warning('Unknown config key "%s" ignored', key)
                continue
            merged[key] = value
        return merged

    def create_from(self, content: dict[str, Any]) -> AppConfig:
        merged = self.merge(content)
        values = {key.value: _convert(key, merged[key.value]) for key in AppConfigs}
        config = AppConfig(**values)
        config.validate()
        return config

    def create(self, file: JsonFile, **kwargs) -> AppConfig:
        if not file.exists():
            raise ValidationError(f"Config file {file.path} does not exist")
        content = self.source.read(file)
        return self.create_from(content)

    def default(self) -> AppConfig:
        return self.create_from({})
