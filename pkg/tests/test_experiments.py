import math
import time

import numpy as np
import pytest

from histopolation.config.app import AppConfig
from histopolation.errors import ValidationError
from histopolation.experiments.convergence import ConvergenceRow, WidthPolicy, WidthRule, converge, fitted_slope
from histopolation.experiments.functions import FunctionName, create_function
from histopolation.experiments.imaging import (
    ImageGrid,
    UpscaleMode,
    image_bin,
    image_upscale,
    nearest_upscale,
    phantom,
    rmse,
)
from histopolation.experiments.tables import kernel_table, lagrange_table


@pytest.fixture
def config() -> AppConfig:
    return AppConfig(fill_points=400, mean_error_points=200)


def smooth_image(size: int) -> ImageGrid:
    axis = (np.arange(size) + 0.5) / size
    x, y = np.meshgrid(axis, axis)
    return ImageGrid(0.5 + 0.3 * np.sin(2.0 * math.pi * x) * np.cos(2.0 * math.pi * y))


class TestSampleFunctions:
    def test_lorentzian_means(self):
        function = create_function("lorentzian")
        means = function.segment_means([0.4], 2.0)

        assert means[0] == pytest.approx(math.atan(1.0), abs=1e-15)

    def test_step_means(self):
        function = create_function("STEP")

        assert np.allclose(function.segment_means([-1.0, 0.0, 1.0], 1.0), [0.0, 0.5, 1.0])

    def test_linear_means_are_center_values(self):
        function = create_function(FunctionName.LINEAR)

        assert np.allclose(function.segment_means([-0.3, 0.7], 0.4), [-0.3, 0.7])

    def test_unknown_function(self):
        with pytest.raises(ValidationError, match="Unknown test function"):
            create_function("runge")


class TestWidthRule:
    def test_parse_shrink(self):
        rule = WidthRule.parse(" Shrink ")

        assert rule.policy == WidthPolicy.SHRINK
        assert rule.width_for(5) == 0.5

    def test_parse_fixed(self):
        rule = WidthRule.parse("fixed:0.25")

        assert rule == WidthRule(WidthPolicy.FIXED, 0.25)
        assert rule.width_for(100) == 0.25

    @pytest.mark.parametrize("value", ["fixed", "fixed:x", "fixed:-1", "fixed:nan", "shrink:2", "halve"])
    def test_parse_rejects(self, value):
        with pytest.raises(ValidationError):
            WidthRule.parse(value)

    def test_shrink_needs_two_segments(self):
        with pytest.raises(ValidationError, match="n >= 2"):
            WidthRule.parse("shrink").width_for(1)


class TestConvergence:
    def test_constant_is_reproduced_by_indicator(self, config):
        rows = converge("indicator", "constant", [5, 10], WidthRule.parse("shrink"), config=config)

        assert all(row.sup_mean_err <= 1e-8 for row in rows)
        assert all(row.sup_err <= 1e-8 for row in rows)

    def test_indicator_rates_with_shrinking_segments(self, config):
        rows = converge("indicator", "lorentzian", [5, 10, 20, 40, 80], WidthRule.parse("shrink"), config=config)

        assert not any(row.failed for row in rows)
        assert -1.3 <= fitted_slope(rows, "sup_err") <= -0.7
        assert -2.4 <= fitted_slope(rows, "sup_mean_err") <= -1.6

    def test_rows_report_width_and_fill(self, config):
        rows = converge("indicator", "lorentzian", [5], WidthRule.parse("shrink"), config=config)

        assert rows[0].a == 0.5
        assert rows[0].fill == pytest.approx(0.25, abs=1e-2)
        assert rows[0].jitter_used == 0.0

    def test_matern_with_fixed_segments_improves_means_only(self):
        rows = converge("matern", "lorentzian", [5, 10, 20, 40, 80], WidthRule.parse("fixed:0.5"), config=AppConfig())

        assert not any(row.failed for row in rows)
        assert rows[-1].sup_mean_err < rows[0].sup_mean_err / 10.0
        stalled = [row.sup_err for row in rows[-3:]]
        assert max(stalled) < 1.1 * min(stalled)
        assert rows[-1].cond_estimate > rows[0].cond_estimate

    def test_needs_segment_counts(self, config):
        with pytest.raises(ValidationError, match="at least one n"):
            converge("matern", "lorentzian", [], WidthRule.parse("shrink"), config=config)
        with pytest.raises(ValidationError, match="positive"):
            converge("matern", "lorentzian", [0, 5], WidthRule.parse("shrink"), config=config)

    def test_fitted_slope_skips_failed_rows(self):
        rows = [
            ConvergenceRow(10, 0.1, 1e-2, 1e-3, 1.0, 0.0, 0.1),
            ConvergenceRow(100, 0.01, 1e-3, 1e-5, 1.0, 0.0, 0.01),
            ConvergenceRow.failure(1000, 0.001, 0.001, "not positive definite"),
        ]

        assert fitted_slope(rows, "sup_err") == pytest.approx(-1.0, abs=1e-12)
        assert fitted_slope(rows, "sup_mean_err") == pytest.approx(-2.0, abs=1e-12)

    def test_fitted_slope_needs_two_rows(self):
        with pytest.raises(ValidationError, match="two successful rows"):
            fitted_slope([ConvergenceRow(10, 0.1, 1e-2, 1e-3, 1.0, 0.0, 0.1)], "sup_err")

    def test_failure_rows_are_nan(self):
        row = ConvergenceRow.failure(5, 0.5, 0.25, "broken")

        assert row.failed
        assert math.isnan(row.sup_err)
        assert row.message == "broken"


class TestTables:
    def test_indicator_kernel_table(self):
        table = kernel_table("indicator", [0.0, 0.5, 2.0], width=0.5)

        assert table.header == ("x", "alpha", "kappa", "alpha_norm", "kappa_norm")
        assert np.allclose(table.column("alpha"), [2.0, 0.0, 0.0])
        assert np.allclose(table.column("kappa"), [2.0, 0.0, 0.0])
        assert table.column("kappa_norm")[0] == 1.0

    def test_ball_kernel_table_uses_distance(self):
        table = kernel_table("ball:gauss:2", [0.0, 0.3], width=0.5)

        assert np.array_equal(table.column("x"), [0.0, 0.3])
        assert table.column("kappa")[1] < table.column("kappa")[0]

    def test_lagrange_basis_is_cardinal(self):
        centers = [-1.0, -0.5, 0.0, 0.5, 1.0]
        result = lagrange_table("matern", centers, 0.5, np.linspace(-1.5, 1.5, 31))

        assert result.cardinal_deviation <= 1e-8
        assert result.identity_deviation <= 1e-8
        assert result.values.header[:2] == ("x", "l_1")
        assert result.values.header[-3:] == ("partition", "s_direct", "s_cardinal")
        assert result.cardinal.rows.shape == (5, 6)


class TestImaging:
    def test_bin_averages_blocks(self):
        grid = ImageGrid(np.arange(16.0).reshape(4, 4) / 16.0)

        result = image_bin(grid, 2)

        assert np.allclose(result.values, np.array([[2.5, 4.5], [10.5, 12.5]]) / 16.0)

    def test_bin_by_one_is_identity(self):
        grid = smooth_image(4)

        assert np.array_equal(image_bin(grid, 1).values, grid.values)

    @pytest.mark.parametrize("factor", [0, 3])
    def test_bin_rejects_factor(self, factor):
        with pytest.raises(ValidationError):
            image_bin(smooth_image(4), factor)

    def test_cell_average_upscale_reproduces_pixels(self):
        axis = np.linspace(0.2, 0.8, 6)
        grid = ImageGrid(np.outer(np.linspace(0.3, 0.6, 4), np.ones(6)) + 0.1 * axis[None, :])

        result = image_upscale(grid, 6, 4, "matern", mode=UpscaleMode.CELL_AVERAGE)

        assert np.max(np.abs(result.values - grid.values)) <= 1e-8

    def test_indicator_upscale_of_constant_image(self):
        grid = ImageGrid.constant(4, 4, 0.5)

        result = image_upscale(grid, 8, 8, "indicator")

        assert result.values.shape == (8, 8)
        assert np.allclose(result.values, 0.5, atol=1e-12)

    def test_indicator_upscale_matches_nearest_neighbor(self):
        grid = smooth_image(4)

        result = image_upscale(grid, 12, 8, "indicator")

        assert np.allclose(result.values, nearest_upscale(grid, 12, 8).values, atol=1e-12)

    def test_histopolation_beats_nearest_neighbor(self):
        truth = smooth_image(32)
        coarse = image_bin(truth, 4)

        upscaled = image_upscale(coarse, 32, 32, "matern", mode=UpscaleMode.CELL_AVERAGE)

        assert rmse(upscaled, truth) < rmse(nearest_upscale(coarse, 32, 32), truth)

    def test_phantom_round_trip_beats_nearest_neighbor(self):
        truth = phantom(256)
        coarse = image_bin(truth, 8)

        upscaled = image_upscale(coarse, 256, 256, "matern")

        assert rmse(upscaled, truth) < rmse(nearest_upscale(coarse, 256, 256), truth)

    def test_large_image_upscale_is_fast(self):
        start = time.perf_counter()

        result = image_upscale(smooth_image(128), 256, 256, "matern")

        assert result.values.shape == (256, 256)
        assert time.perf_counter() - start < 10.0

    def test_upscale_rejects_empty_target(self):
        with pytest.raises(ValidationError, match="positive"):
            image_upscale(smooth_image(4), 0, 4)

    def test_rmse_shapes(self):
        assert rmse(np.zeros((2, 2)), np.ones((2, 2))) == 1.0
        with pytest.raises(ValidationError, match="shape"):
            rmse(np.zeros((2, 2)), np.zeros((2, 3)))

    def test_image_grid_geometry(self):
        grid = ImageGrid.constant(4, 2, 0.0)

        assert grid.cell_size == (0.25, 0.5)
        assert np.allclose(grid.x_centers, [0.125, 0.375, 0.625, 0.875])
        assert np.allclose(grid.y_centers, [0.25, 0.75])
        assert grid.as_problem().size == 8

    def test_image_grid_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            ImageGrid(np.zeros(3))
        with pytest.raises(ValidationError):
            ImageGrid(np.array([[np.nan]]))

    def test_phantom(self):
        image = phantom(64)

        assert image.values.shape == (64, 64)
        assert image.values.min() >= 0.0
        assert image.values.max() <= 1.0
        assert np.array_equal(image.values, phantom(64).values)
        assert np.unique(image.values).size > 4

    def test_phantom_size(self):
        with pytest.raises(ValidationError, match="at least 2"):
            phantom(1)
