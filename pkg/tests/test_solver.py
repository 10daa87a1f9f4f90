from unittest.mock import patch

import numpy as np
import pytest
from scipy import linalg, sparse

from histopolation.domains.models import Domain, HistoProblem, equispaced_centers, uniform_segments
from histopolation.errors import NotPositiveDefiniteError, UnsupportedConstructionError, ValidationError
from histopolation.kernels.catalog import create_ball, create_pair, create_tensor
from histopolation.kernels.profiles import matern_profile
from histopolation.solver.histopolant import (
    Histopolant,
    cardinal_histopolant,
    evaluate,
    evaluate_grid,
    evaluate_mean,
    evaluate_mean_grid,
    histopolate,
    kernel_span_norm,
    power_function,
    power_profile,
    sliding_segments,
)
from histopolation.solver.matrix import HistoMatrix, assemble, assemble_quadrature
from histopolation.solver.quadrature import QuadratureRule, domain_rule
from histopolation.solver.solve import factorize, kronecker_solve, lagrange_values, solve
from histopolation.solver.strategies import (
    Assembly,
    AssemblySettings,
    OverlapStrategy,
    QuadratureStrategy,
    TranslateStrategy,
    resized_pair,
    select_strategy,
)


def shifted_bump(x):
    return np.exp(-((x - 0.4) ** 2))


@pytest.fixture
def segments():
    centers = np.array([-1.0, -0.6, 0.1, 0.4, 1.0])
    return uniform_segments(centers, 0.4, [0.3, -1.0, 2.0, 0.5, 1.2])


@pytest.fixture
def mixed_segments():
    domains = [Domain.interval(-1.0, -0.2), Domain.interval(-0.5, 0.3), Domain.interval(0.1, 0.4), Domain.interval(0.6, 1.2)]
    return HistoProblem.from_domains(domains, [1.0, -0.5, 0.25, 2.0])


@pytest.fixture
def mixed_2d():
    domains = [
        Domain.box((0.0, 0.0), (0.5, 0.5)),
        Domain.box((0.6, 0.2), (0.3, 0.4)),
        Domain.ball((-0.4, 0.6), 0.35),
        Domain.ball((0.2, -0.7), 0.25),
    ]
    return HistoProblem.from_domains(domains, [1.0, 0.5, -0.25, 2.0])


class TestQuadratureRule:
    def test_box_rule_is_normalized(self):
        points, weights = domain_rule(Domain.box((1.0, -1.0), (0.5, 0.25)), 4)

        assert points.shape == (16, 2)
        assert weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert np.dot(weights, points[:, 0] ** 2) == pytest.approx(1.0 + 0.25 / 3.0, abs=1e-13)

    def test_disk_rule_second_moment(self):
        points, weights = domain_rule(Domain.ball((0.5, 0.5), 0.8), 6)

        offsets = points - 0.5
        assert np.dot(weights, np.sum(offsets**2, axis=1)) == pytest.approx(0.8**2 / 2.0, abs=1e-13)

    def test_ball_rule_second_moment(self):
        points, weights = domain_rule(Domain.ball((0.0, 0.0, 1.0), 0.5), 6)

        assert np.dot(weights, (points[:, 2] - 1.0) ** 2) == pytest.approx(0.25 / 5.0, abs=1e-13)

    def test_no_rule_for_four_dimensional_balls(self):
        with pytest.raises(UnsupportedConstructionError, match="dimension 4"):
            domain_rule(Domain.ball((0.0,) * 4, 1.0), 4)

    def test_rejects_zero_nodes(self):
        with pytest.raises(ValidationError, match="at least one node"):
            domain_rule(Domain.segment(0.0, 1.0), 0)

    def test_domain_nodes_returns_block(self):
        rule = QuadratureRule.gauss_legendre([Domain.segment(0.0, 0.5), Domain.segment(2.0, 0.5)], 3)

        nodes, weights = rule.domain_nodes(1)

        assert rule.size == 2
        assert np.all(nodes > 1.4)
        assert weights.sum() == pytest.approx(1.0)

    @pytest.mark.parametrize(
        ("weights", "match"),
        [
            ([[1.5, -0.5]], "nonnegative"),
            ([[0.5, 0.4]], "sum to"),
            ([[1.0, 0.0], [0.0, 0.0]], "empty weight"),
            ([[1.0, 0.0, 0.0]], "weight columns"),
        ],
    )
    def test_invalid_weights(self, weights, match):
        with pytest.raises(ValidationError, match=match):
            QuadratureRule(np.array([[0.0], [1.0]]), sparse.csr_array(np.array(weights)))

    def test_block_length_mismatch(self):
        with pytest.raises(ValidationError, match="nodes but"):
            QuadratureRule.from_blocks([np.zeros((2, 1))], [np.array([1.0])])


class TestStrategySelection:
    def test_translates_use_closed_form(self, segments):
        strategy = select_strategy(segments, create_pair("matern", 1.0, 0.4))

        assert isinstance(strategy, TranslateStrategy)
        assert strategy.assembly == Assembly.CLOSED_FORM

    def test_gauss_translates_report_quadrature(self, segments):
        strategy = select_strategy(segments, create_pair("gauss", 1.0, 0.4))

        assert isinstance(strategy, TranslateStrategy)
        assert strategy.assembly == Assembly.QUADRATURE

    def test_width_mismatch_falls_back_to_quadrature(self, segments):
        assert isinstance(select_strategy(segments, create_pair("matern", 1.0, 0.5)), QuadratureStrategy)

    def test_indicator_on_mixed_domains_uses_overlap(self, mixed_segments, mixed_2d):
        assert isinstance(select_strategy(mixed_segments, create_pair("indicator", 1.0, 0.5)), OverlapStrategy)
        assert isinstance(select_strategy(mixed_2d, create_tensor("indicator", 1.0, (0.5, 0.5))), OverlapStrategy)

    def test_mixed_domains_use_quadrature(self, mixed_segments):
        assert isinstance(select_strategy(mixed_segments, create_pair("matern", 1.0, 0.5)), QuadratureStrategy)

    def test_dimension_mismatch(self, segments):
        with pytest.raises(ValidationError, match="dimension"):
            select_strategy(segments, create_tensor("matern", 1.0, (0.4, 0.4)))

    def test_four_dimensional_mixed_balls_unsupported(self):
        domains = [Domain.ball((0.0,) * 4, 0.5), Domain.ball((1.0, 0.0, 0.0, 0.0), 0.25)]
        problem = HistoProblem.from_domains(domains, [1.0, 2.0])

        with pytest.raises(UnsupportedConstructionError):
            select_strategy(problem, create_ball("ball:matern:4", 1.0, 0.5))

    def test_resized_pair(self):
        pair = create_pair("matern", 1.0, 0.5)

        assert resized_pair(pair, 0.5) is pair
        assert resized_pair(pair, 0.25).width == 0.25
        assert resized_pair(create_pair("indicator", 1.0, 0.5), 0.3).indicator
        assert resized_pair(create_pair("gauss", 1.0, 0.5), 0.3).width == 0.3

    def test_bspline_cannot_resize(self):
        with pytest.raises(UnsupportedConstructionError, match="bspline:2"):
            resized_pair(create_pair("bspline:2", 1.0, 0.5), 0.3)


class TestAssembly:
    def test_translate_gram_is_kappa_of_offsets(self, segments):
        pair = create_pair("inverse-quadratic", 2.0, 0.4)
        centers = segments.centers[:, 0]

        matrix = assemble(segments, pair)

        assert np.allclose(matrix.entries, pair.kappa(np.subtract.outer(centers, centers)), rtol=0, atol=1e-14)
        assert np.array_equal(matrix.entries, matrix.entries.T)

    @pytest.mark.parametrize("name", ["inverse-quadratic", "mexican-hat"])
    def test_smooth_kernels_quadrature_is_exact(self, segments, name):
        pair = create_pair(name, 1.0, 0.4)
        exact = TranslateStrategy(segments, pair).gram()

        quadrature = QuadratureStrategy(segments, pair, AssemblySettings(quadrature_nodes=16)).gram()

        assert np.max(np.abs(quadrature - exact)) <= 1e-10

    def test_quadrature_converges_for_matern(self, segments):
        pair = create_pair("matern", 1.0, 0.4)
        exact = TranslateStrategy(segments, pair).gram()

        errors = []
        for nodes in [8, 16, 32, 64]:
            quadrature = QuadratureStrategy(segments, pair, AssemblySettings(quadrature_nodes=nodes)).gram()
            errors.append(np.max(np.abs(quadrature - exact)))

        assert errors[3] < errors[2] < errors[1] < errors[0]
        assert all(finer < coarser / 3.0 for coarser, finer in zip(errors, errors[1:]))
        assert errors[3] < 1e-4

    def test_quadrature_gram_positive_definite_for_disjoint_segments(self):
        problem = uniform_segments([-1.0, -0.4, 0.2, 0.8], 0.3)
        rule = QuadratureRule.gauss_legendre(problem.domains, 16)

        matrix = assemble_quadrature(problem, matern_profile(1.0), rule)

        assert np.array_equal(matrix.entries, matrix.entries.T)
        assert np.min(np.linalg.eigvalsh(matrix.entries)) > 0.0

    @pytest.mark.parametrize("nodes", [8, 16, 32, 64])
    def test_quadrature_gram_is_positive_semidefinite(self, segments, nodes):
        gram = QuadratureStrategy(segments, create_pair("matern", 1.0, 0.4), AssemblySettings(quadrature_nodes=nodes)).gram()

        assert np.array_equal(gram, gram.T)
        assert np.min(np.linalg.eigvalsh(gram)) >= -1e-10 * np.trace(gram)

    def test_assemble_quadrature_with_profile(self, mixed_segments):
        rule = QuadratureRule.gauss_legendre(mixed_segments.domains, 12)
        settings = AssemblySettings(quadrature_nodes=12)

        matrix = assemble_quadrature(mixed_segments, matern_profile(1.0), rule, settings)

        expected = QuadratureStrategy(mixed_segments, create_pair("matern", 1.0, 0.5), settings).gram()
        assert matrix.assembly == Assembly.QUADRATURE
        assert np.allclose(matrix.entries, expected, rtol=0, atol=1e-14)

    def test_assemble_quadrature_checks_rule(self, mixed_segments, segments):
        rule = QuadratureRule.gauss_legendre(segments.domains, 4)

        with pytest.raises(ValidationError, match="covers"):
            assemble_quadrature(mixed_segments, matern_profile(1.0), rule)

    def test_overlap_gram_for_boxes(self, mixed_segments):
        matrix = assemble(mixed_segments, create_pair("indicator", 1.0, 0.5))

        assert matrix.entries[0, 1] == pytest.approx(0.3 / (0.8 * 0.8))
        assert matrix.entries[2, 2] == pytest.approx(1.0 / 0.3)
        assert matrix.entries[0, 3] == 0.0

    def test_parallel_fill_matches_sequential(self):
        problem = uniform_segments(equispaced_centers(300), 2.0 / 299)
        pair = create_pair("matern", 1.0, 2.0 / 299)

        sequential = assemble(problem, pair, AssemblySettings(max_workers=1))
        parallel = assemble(problem, pair, AssemblySettings(max_workers=4))

        assert np.array_equal(sequential.entries, parallel.entries)

    def test_dense_limit(self, segments):
        with pytest.raises(ValidationError, match="dense_limit"):
            assemble(segments, create_pair("matern", 1.0, 0.4), AssemblySettings(dense_limit=3))

    def test_matrix_must_be_symmetric(self):
        with pytest.raises(ValidationError, match="symmetric"):
            HistoMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]), Assembly.CLOSED_FORM)

    def test_matrix_must_be_square(self):
        with pytest.raises(ValidationError, match="square"):
            HistoMatrix(np.ones((2, 3)), Assembly.CLOSED_FORM)


class TestFactorization:
    @pytest.mark.parametrize("n", [8, 64, 512])
    def test_equispaced_matern_is_positive_definite(self, n):
        a = 2.0 / (n - 1)
        matrix = assemble(uniform_segments(equispaced_centers(n), a), create_pair("matern", 1.0, a))

        factorize(matrix)

        assert matrix.is_factorized
        assert matrix.jitter == 0.0
        assert matrix.condition_estimate() >= 1.0

    def test_duplicate_domains_raise(self):
        domains = [Domain.segment(0.0, 0.25), Domain.segment(0.5, 0.25), Domain.segment(0.0, 0.25)]
        problem = HistoProblem.from_domains(domains, [1.0, 2.0, 1.0], allow_duplicates=True)
        matrix = assemble(problem, create_pair("matern", 1.0, 0.5))

        with pytest.raises(NotPositiveDefiniteError, match="identical rows"):
            factorize(matrix)

    def test_jitter_retry(self, segments):
        matrix = assemble(segments, create_pair("matern", 1.0, 0.4))
        factor = linalg.cho_factor(matrix.entries, lower=False)

        with patch("histopolation.solver.solve._try_cholesky") as mock_cholesky:
            mock_cholesky.side_effect = [None, factor]
            with patch("histopolation.solver.solve.log") as mock_log:
                factorize(matrix, jitter_factor=1e-10)

                mock_log.warning.assert_called_once()
        assert matrix.jitter == pytest.approx(1e-10 * np.trace(matrix.entries) / 5)
        assert np.allclose(mock_cholesky.call_args.args[0], matrix.jittered())

    def test_factorize_is_idempotent(self, segments):
        matrix = factorize(assemble(segments, create_pair("matern", 1.0, 0.4)))

        with patch("histopolation.solver.solve._try_cholesky") as mock_cholesky:
            factorize(matrix)

            mock_cholesky.assert_not_called()

    def test_condition_needs_factor(self):
        with pytest.raises(ValidationError, match="not factorized"):
            HistoMatrix.identity(3).condition_estimate()

    def test_solve_checks_data(self):
        with pytest.raises(ValidationError, match="length"):
            solve(HistoMatrix.identity(3), [1.0, 2.0])
        with pytest.raises(ValidationError, match="finite"):
            solve(HistoMatrix.identity(2), [1.0, np.inf])

    def test_lagrange_values_of_a_column_are_unit_vector(self, segments):
        matrix = assemble(segments, create_pair("matern", 1.0, 0.4))

        values = lagrange_values(matrix, matrix.entries[:, 2])

        assert np.allclose(values, np.eye(5)[2], atol=1e-12)


class TestKronecker:
    def test_matches_dense_solve(self):
        values = np.arange(12.0).reshape(3, 4) ** 1.5 / 10.0
        problem = HistoProblem.grid([0.1, 0.35, 0.6, 0.85], 0.125, [0.2, 0.5, 0.8], 0.15, values)
        kernel = create_tensor("matern", 1.5, (0.25, 0.3))

        h = histopolate(problem, kernel)
        dense = solve(assemble(problem, kernel), problem.values)

        assert h.axis_matrices is not None
        assert h.matrix is None
        assert np.allclose(h.coefficients, dense, rtol=0, atol=1e-9 * (1 + np.max(np.abs(dense))))

    def test_kronecker_solve_convention(self):
        rng = np.random.default_rng(5)
        row = rng.normal(size=(3, 3))
        col = rng.normal(size=(4, 4))
        row_matrix = HistoMatrix(row @ row.T + 3 * np.eye(3), Assembly.CLOSED_FORM)
        col_matrix = HistoMatrix(col @ col.T + 4 * np.eye(4), Assembly.CLOSED_FORM)
        data = rng.normal(size=(3, 4))

        coefficients = kronecker_solve(row_matrix, col_matrix, data)

        full = np.kron(row_matrix.entries, col_matrix.entries)
        assert np.allclose(full @ coefficients.ravel(), data.ravel(), atol=1e-12)

    def test_kronecker_solve_checks_shape(self):
        with pytest.raises(ValidationError, match="Grid data"):
            kronecker_solve(HistoMatrix.identity(2), HistoMatrix.identity(3), np.zeros((3, 2)))

    def test_grid_evaluation_matches_pointwise(self):
        values = np.array([[0.1, 0.4, 0.2], [0.9, 0.3, 0.5]])
        problem = HistoProblem.grid([0.5 / 3, 1.5 / 3, 2.5 / 3], 0.5 / 3, [0.25, 0.75], 0.25, values)
        h = histopolate(problem, create_tensor("inverse-quadratic", 2.0, (1.0 / 3, 0.5)))
        x = np.linspace(0.0, 1.0, 7)
        y = np.linspace(0.0, 1.0, 5)

        grid = evaluate_grid(h, x, y)

        points = np.stack(np.meshgrid(x, y), axis=-1).reshape(-1, 2)
        assert grid.shape == (5, 7)
        assert np.allclose(grid.ravel(), evaluate(h, points), atol=1e-12)

    def test_cell_means_reproduce_data(self):
        values = np.array([[0.1, 0.4, 0.2], [0.9, 0.3, 0.5]])
        problem = HistoProblem.grid([0.5 / 3, 1.5 / 3, 2.5 / 3], 0.5 / 3, [0.25, 0.75], 0.25, values)
        h = histopolate(problem, create_tensor("matern", 1.0, (1.0 / 3, 0.5)))

        means = evaluate_mean_grid(h, [0.5 / 3, 1.5 / 3, 2.5 / 3], 1.0 / 3, [0.25, 0.75], 0.5)

        assert np.allclose(means, values, atol=1e-10)

    def test_separable_evaluation_needs_grid(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))

        with pytest.raises(ValidationError, match="Kronecker"):
            evaluate_grid(h, [0.0], [0.0])


class TestReproduction:
    @pytest.mark.parametrize("name", ["matern", "inverse-quadratic", "inverse-multiquadric", "mexican-hat", "indicator", "gauss", "bspline:2"])
    def test_uniform_segments(self, segments, name):
        h = histopolate(segments, create_pair(name, 1.0, 0.4))

        means = np.array([evaluate_mean(h, domain) for domain in segments.domains])

        assert np.max(np.abs(means - segments.values)) <= 1e-8 * (1 + np.max(np.abs(segments.values)))

    @pytest.mark.parametrize("name", ["matern", "indicator"])
    def test_mixed_segments(self, mixed_segments, name):
        h = histopolate(mixed_segments, create_pair(name, 1.0, 0.5))

        means = np.array([evaluate_mean(h, domain) for domain in mixed_segments.domains])

        assert np.allclose(means, mixed_segments.values, rtol=0, atol=1e-8 * 3)

    @pytest.mark.parametrize("name", ["matern", "indicator"])
    def test_mixed_boxes_and_balls(self, mixed_2d, name):
        h = histopolate(mixed_2d, create_tensor(name, 1.0, (0.5, 0.5)), AssemblySettings(quadrature_nodes=12))

        means = np.array([evaluate_mean(h, domain) for domain in mixed_2d.domains])

        assert np.allclose(means, mixed_2d.values, rtol=0, atol=1e-8 * 3)

    def test_uniform_disks_with_ball_kernel(self):
        domains = [Domain.ball(center, 0.3) for center in [(0.0, 0.0), (0.5, 0.1), (-0.3, 0.6), (0.4, -0.5)]]
        problem = HistoProblem.from_domains(domains, [1.0, 0.0, -1.0, 0.5])
        h = histopolate(problem, create_ball("ball:matern:2", 1.0, 0.3))

        means = np.array([evaluate_mean(h, domain) for domain in domains])

        assert isinstance(h.strategy, TranslateStrategy)
        assert np.allclose(means, problem.values, rtol=0, atol=1e-8 * 2)

    @pytest.mark.parametrize("problem", ["segments", "mixed_segments"])
    def test_reordering_keeps_histopolant(self, problem, request):
        problem = request.getfixturevalue(problem)
        pair = create_pair("matern", 1.0, 0.4)
        order = np.random.default_rng(1).permutation(problem.size)
        x = np.linspace(-1.4, 1.4, 29)

        original = evaluate(histopolate(problem, pair), x)
        reordered = evaluate(histopolate(problem.permuted(order), pair), x)

        assert np.allclose(reordered, original, rtol=0, atol=1e-10)

    def test_pointwise_evaluation(self, segments):
        pair = create_pair("matern", 1.0, 0.4)
        h = histopolate(segments, pair)

        value = evaluate(h, 0.25)

        expected = float(np.dot(pair.alpha(0.25 - segments.centers[:, 0]), h.coefficients))
        assert isinstance(value, float)
        assert value == pytest.approx(expected, abs=1e-14)

    def test_numeric_mean_over_other_shapes(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))
        target = Domain.interval(-0.3, 0.7)

        exact = evaluate_mean(h, target)

        grid = np.linspace(-0.3, 0.7, 20001)
        assert exact == pytest.approx(np.trapezoid(evaluate(h, grid), grid), abs=1e-6)

    def test_evaluation_checks_dimension(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))

        with pytest.raises(ValidationError, match="dimension"):
            evaluate_mean(h, Domain.box((0.0, 0.0), (1.0, 1.0)))

    def test_constant_data_on_equispaced_segments(self):
        problem = uniform_segments(equispaced_centers(9), 0.25, np.full(9, 3.0))
        h = histopolate(problem, create_pair("inverse-quadratic", 1.0, 0.25))

        means = [evaluate_mean(h, domain) for domain in sliding_segments(np.linspace(-1.0, 1.0, 9), 0.25)]

        assert np.allclose(means, 3.0, atol=1e-10)


class TestDiagnostics:
    def test_power_function_vanishes_on_data(self, segments):
        pair = create_pair("matern", 1.0, 0.4)
        matrix = assemble(segments, pair)

        powers = [power_function(matrix, pair, segments, domain) for domain in segments.domains]

        assert max(powers) <= 1e-7

    def test_power_function_without_data(self):
        pair = create_pair("matern", 1.0, 0.4)

        value = power_function(None, pair, None, Domain.segment(0.0, 0.2))

        assert value == pytest.approx(np.sqrt(pair.kappa(0.0)))

    def test_power_profile_grows_away_from_data(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))

        profile = power_profile(h, sliding_segments([0.1, 0.25, 30.0], 0.4))

        assert profile[0] <= 1e-7
        assert profile[1] > profile[0]
        assert profile[2] == pytest.approx(np.sqrt(h.kernel.kappa(0.0)), rel=1e-3)

    def test_mean_error_bounded_by_power_function(self):
        a = 2.0 / 9.0
        pair = create_pair("matern", 1.0, a)
        centers = equispaced_centers(10)
        targets = sliding_segments(np.linspace(-1.2, 1.2, 41), a)
        target_centers = np.array([domain.center[0] for domain in targets])
        rng = np.random.default_rng(7)

        for _ in range(20):
            sources = np.sort(rng.uniform(-1.5, 1.5, 6))
            weights = rng.normal(size=6)
            norm = kernel_span_norm(assemble(uniform_segments(sources, a), pair), weights)
            data = pair.kappa(np.subtract.outer(centers, sources)) @ weights
            h = histopolate(uniform_segments(centers, a, data), pair)

            exact = pair.kappa(np.subtract.outer(target_centers, sources)) @ weights
            errors = np.abs(exact - np.array([evaluate_mean(h, domain) for domain in targets]))

            assert np.all(errors <= 1.01 * power_profile(h, targets) * norm + 1e-10)

    def test_cardinal_histopolant(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))

        ell = cardinal_histopolant(h, 1)

        means = np.array([evaluate_mean(ell, domain) for domain in segments.domains])
        assert np.allclose(means, np.eye(5)[1], atol=1e-10)
        assert ell.matrix is h.matrix

    def test_kernel_span_norm(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))

        norm = kernel_span_norm(h.matrix, h.coefficients)

        assert norm**2 == pytest.approx(float(segments.values @ h.coefficients), rel=1e-10)

    def test_histopolant_checks_coefficients(self, segments):
        with pytest.raises(ValidationError, match="coefficients"):
            Histopolant(np.zeros(3), create_pair("matern", 1.0, 0.4), segments)

    def test_solved_histopolant_reports_diagnostics(self, segments):
        h = histopolate(segments, create_pair("matern", 1.0, 0.4))

        assert h.jitter == 0.0
        assert h.condition_estimate() >= 1.0
        with pytest.raises(ValidationError, match="not on a grid"):
            _ = h.grid_coefficients


class TestApproximation:
    def test_error_shrinks_with_more_segments(self):
        errors = []
        for n in [5, 9, 17]:
            a = 2.0 / (n - 1)
            centers = equispaced_centers(n)
            data = [np.mean(shifted_bump(np.linspace(c - a / 2, c + a / 2, 2001))) for c in centers]
            h = histopolate(uniform_segments(centers, a, data), create_pair("matern", 1.0, a))
            x = np.linspace(-1.0, 1.0, 401)
            errors.append(np.max(np.abs(evaluate(h, x) - shifted_bump(x))))

        assert errors[0] > errors[1] > errors[2]
