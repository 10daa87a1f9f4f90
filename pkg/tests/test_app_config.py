import json
from unittest.mock import Mock, patch

import pytest

from histopolation.config.app import AppConfig, AppConfigFactory, AppConfigs
from histopolation.data.json_source import JsonSource
from histopolation.errors import ParseError, ValidationError
from histopolation.helpers.resource import app_config_template_file
from histopolation.interfaces.path import JsonFile


class TestAppConfig:
    def test_defaults_are_valid(self):
        config = AppConfig()

        config.validate()

        assert config.quadrature_nodes == 32
        assert config.jitter_factor == 1e-12
        assert config.fourier_bands == 8

    def test_as_dict_covers_every_key(self):
        config = AppConfig()

        result = config.as_dict()

        assert set(result) == {key.value for key in AppConfigs}

    @pytest.mark.parametrize("key", ["quadrature_nodes", "jitter_factor", "truncation_radius", "max_workers"])
    def test_validate_rejects_nonpositive_values(self, key):
        config = AppConfig(**{key: 0})

        with pytest.raises(ValidationError, match=key):
            config.validate()

    def test_validate_requires_four_bands(self):
        config = AppConfig(fourier_bands=3)

        with pytest.raises(ValidationError, match="fourier_bands"):
            config.validate()


class TestAppConfigFactory:
    @pytest.fixture
    def mock_json_source(self):
        source = Mock(spec=JsonSource)
        source.read.return_value = AppConfig().as_dict()
        return source

    @pytest.fixture
    def factory(self, mock_json_source):
        return AppConfigFactory(mock_json_source)

    def test_template_matches_defaults(self):
        content = JsonSource().read(app_config_template_file())

        assert content == AppConfig().as_dict()

    def test_default_reads_template(self, factory, mock_json_source):
        config = factory.default()

        mock_json_source.read.assert_called_once()
        assert config.as_dict() == AppConfig().as_dict()

    def test_create_from_overrides_single_key(self, factory):
        config = factory.create_from({AppConfigs.QUADRATURE_NODES.value: 64})

        assert config.quadrature_nodes == 64
        assert config.dense_limit == 4096

    def test_create_from_ignores_unknown_keys(self, factory):
        with patch("histopolation.config.app.log") as mock_log:
            config = factory.create_from({"cache_size": 32})

            mock_log.warning.assert_called_once()
        assert not hasattr(config, "cache_size")

    def test_integer_keys_accept_integral_floats(self, factory):
        config = factory.create_from({AppConfigs.FILL_POINTS.value: 500.0})

        assert config.fill_points == 500
        assert isinstance(config.fill_points, int)

    def test_integer_keys_reject_fractions(self, factory):
        with pytest.raises(ValidationError, match="integer"):
            factory.create_from({AppConfigs.FILL_POINTS.value: 10.5})

    @pytest.mark.parametrize("value", ["1e-12", True, None])
    def test_non_numeric_values_rejected(self, factory, value):
        with pytest.raises(ValidationError, match="numeric"):
            factory.create_from({AppConfigs.JITTER_FACTOR.value: value})

    def test_create_validates(self, factory):
        with pytest.raises(ValidationError, match="dense_limit"):
            factory.create_from({AppConfigs.DENSE_LIMIT.value: -1})

    def test_create_missing_file(self, factory):
        with pytest.raises(ValidationError, match="does not exist"):
            factory.create(JsonFile("/not/there/config.json"))

    def test_create_reads_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"fourier_samples": 1024, "jitter_factor": 1e-10}), encoding="utf-8")

        config = AppConfigFactory().create(JsonFile(str(path)))

        assert config.fourier_samples == 1024
        assert config.jitter_factor == 1e-10
        assert config.quadrature_nodes == 32

    def test_invalid_json_is_parse_error(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{\n  \"jitter_factor\": ,\n}", encoding="utf-8")

        with pytest.raises(ParseError, match="Row 2"):
            AppConfigFactory().create(JsonFile(str(path)))

    def test_json_array_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]", encoding="utf-8")

        with pytest.raises(ParseError, match="JSON object"):
            AppConfigFactory().create(JsonFile(str(path)))
