import numpy as np
import pytest

from paretodyn.hullgeom import GradientBundle, min_norm_in_hull
from paretodyn.problems import (
    Custom,
    DomainError,
    LogSumExp,
    MOProblem,
    ParetoCurve,
    Quadratic,
    builtin_logsumexp,
    builtin_quadratic,
    eval_bundle,
    eval_gradient,
    eval_objective,
    pareto_point,
    single_objective,
)


def central_difference(fn, x, step=1e-6):
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = step
        grad[i] = (fn(x + e) - fn(x - e)) / (2.0 * step)
    return grad


@pytest.fixture(scope="module")
def quadratic():
    return builtin_quadratic()


@pytest.fixture(scope="module")
def logsumexp():
    return builtin_logsumexp()


class TestObjectiveValues:
    def test_quadratic_vanishes_at_its_anchor(self, quadratic):
        assert eval_objective(quadratic, 0, np.array([1.0, 0.0])) == 0.0

    def test_quadratic_at_origin(self, quadratic):
        # 0.5 * (-1, 0) diag(2, 1) (-1, 0)^T by hand
        assert eval_objective(quadratic, 0, np.zeros(2)) == pytest.approx(1.0, abs=1e-15)
        assert eval_objective(quadratic, 1, np.zeros(2)) == pytest.approx(1.0, abs=1e-15)

    def test_logsumexp_at_origin(self, logsumexp):
        expected = np.log(np.exp(0.0) + np.exp(20.0) + np.exp(0.0) + np.exp(-20.0))
        assert eval_objective(logsumexp, 0, np.zeros(2)) == pytest.approx(expected, rel=1e-14)

    def test_index_out_of_range(self, quadratic):
        with pytest.raises(IndexError):
            eval_objective(quadratic, 2, np.zeros(2))
        with pytest.raises(IndexError):
            eval_gradient(quadratic, -1, np.zeros(2))

    def test_non_finite_input_rejected(self, quadratic):
        with pytest.raises(DomainError):
            eval_objective(quadratic, 0, np.array([np.nan, 0.0]))
        with pytest.raises(DomainError):
            eval_gradient(quadratic, 0, np.array([np.inf, 0.0]))


class TestGradients:
    def test_quadratic_gradient_at_origin(self, quadratic):
        grad = eval_gradient(quadratic, 0, np.zeros(2))
        assert np.allclose(grad, [-2.0, 0.0], atol=1e-15)
        fd = central_difference(lambda y: eval_objective(quadratic, 0, y), np.zeros(2))
        assert np.allclose(grad, fd, atol=1e-8)

    def test_gradient_zero_at_single_objective_minimizer(self):
        problem = single_objective(Quadratic(np.eye(2), np.array([1.0, -2.0])), dim=2)
        assert (eval_gradient(problem, 0, np.array([1.0, -2.0])) == 0.0).all()

    def test_logsumexp_gradient_matches_finite_differences(self, logsumexp):
        grad = eval_gradient(logsumexp, 0, np.zeros(2))
        fd = central_difference(lambda y: eval_objective(logsumexp, 0, y), np.zeros(2))
        assert np.linalg.norm(grad - fd) <= 1e-5 * (1.0 + np.linalg.norm(grad))

    def test_gradient_consistency_random_points(self, quadratic, logsumexp):
        rng = np.random.default_rng(11)
        for problem in (quadratic, logsumexp):
            for _ in range(100):
                x = rng.uniform(-2.0, 2.0, size=2)
                for i in range(problem.m):
                    grad = eval_gradient(problem, i, x)
                    fd = central_difference(lambda y: eval_objective(problem, i, y), x)
                    assert np.linalg.norm(grad - fd) <= 1e-5 * (1.0 + np.linalg.norm(grad))

    def test_midpoint_convexity_spot_check(self, quadratic, logsumexp):
        rng = np.random.default_rng(12)
        for problem in (quadratic, logsumexp):
            for _ in range(100):
                x = rng.uniform(-2.0, 2.0, size=2)
                y = rng.uniform(-2.0, 2.0, size=2)
                for i in range(problem.m):
                    lhs = eval_objective(problem, i, (x + y) / 2.0)
                    rhs = 0.5 * (eval_objective(problem, i, x) + eval_objective(problem, i, y))
                    assert lhs <= rhs + 1e-12

    def test_gradient_lower_bound_inequality(self, quadratic, logsumexp):
        rng = np.random.default_rng(13)
        for problem in (quadratic, logsumexp):
            for _ in range(100):
                x = rng.uniform(-2.0, 2.0, size=2)
                z = rng.uniform(-2.0, 2.0, size=2)
                for i in range(problem.m):
                    fx = eval_objective(problem, i, x)
                    fz = eval_objective(problem, i, z)
                    grad = eval_gradient(problem, i, x)
                    assert fz >= fx + grad @ (z - x) - 1e-10


class TestBundle:
    def test_single_objective_bundle(self):
        problem = single_objective(Quadratic(np.eye(2), np.zeros(2)), dim=2)
        values, b = eval_bundle(problem, np.array([1.0, 2.0]))
        assert b.m == 1
        assert (b.grads[0] == eval_gradient(problem, 0, np.array([1.0, 2.0]))).all()

    def test_quadratic_bundle_at_origin(self, quadratic):
        values, b = eval_bundle(quadratic, np.zeros(2))
        assert values.tolist() == [1.0, 1.0]
        assert np.allclose(b.grads, [[-2.0, 0.0], [0.0, -2.0]], atol=1e-15)

    def test_values_bitwise_match_eval_objective(self, logsumexp):
        rng = np.random.default_rng(14)
        for _ in range(10):
            x = rng.uniform(-1.0, 1.0, size=2)
            values, _ = eval_bundle(logsumexp, x)
            for i in range(logsumexp.m):
                assert values[i] == eval_objective(logsumexp, i, x)


class TestParetoCurve:
    def test_quadratic_curve_endpoints(self, quadratic):
        assert np.allclose(pareto_point(quadratic.front, 0.0), [0.0, 1.0])
        assert np.allclose(pareto_point(quadratic.front, 1.0), [1.0, 0.0])

    def test_quadratic_curve_midpoint(self, quadratic):
        assert np.allclose(pareto_point(quadratic.front, 0.5), [2.0 / 3.0, 2.0 / 3.0])

    def test_logsumexp_curve_midpoint(self, logsumexp):
        assert np.allclose(pareto_point(logsumexp.front, 0.5), [0.0, 0.0])

    def test_parameter_outside_unit_interval(self, quadratic):
        with pytest.raises(DomainError):
            pareto_point(quadratic.front, -0.1)
        with pytest.raises(DomainError):
            pareto_point(quadratic.front, 1.1)

    def test_front_criticality_on_grid(self, quadratic, logsumexp):
        # Every sampled curve point must satisfy the first-order condition:
        # the minimum-norm element of the gradient hull is (numerically) zero.
        for problem in (quadratic, logsumexp):
            for lam in np.linspace(0.0, 1.0, 256):
                z = pareto_point(problem.front, lam)
                sel = min_norm_in_hull(GradientBundle(problem.gradient_rows(z)))
                assert np.linalg.norm(sel.g) <= 1e-6


class TestBuiltins:
    def test_dimensions_and_counts(self, quadratic, logsumexp):
        assert quadratic.dim == 2
        assert quadratic.m == 2
        assert logsumexp.m == 2
        assert quadratic.front.injective_values
        assert logsumexp.front.injective_values

    def test_batched_values_match_rowwise(self, logsumexp):
        rng = np.random.default_rng(15)
        X = rng.uniform(-1.0, 1.0, size=(16, 2))
        batch = logsumexp.values_batch(X)
        for r, x in enumerate(X):
            assert np.allclose(batch[r], logsumexp.values(x), rtol=1e-15)


class TestConstruction:
    def test_asymmetric_matrix_rejected(self):
        with pytest.raises(DomainError):
            Quadratic(np.array([[1.0, 2.0], [0.0, 1.0]]), np.zeros(2))

    def test_indefinite_matrix_rejected(self):
        with pytest.raises(DomainError):
            Quadratic(np.diag([1.0, -0.5]), np.zeros(2))

    def test_large_matrices_accepted_unchecked(self):
        # PSD validation is documented to stop at d = 8.
        Q = -np.eye(9)
        Quadratic(Q, np.zeros(9))

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DomainError):
            MOProblem(
                (Quadratic(np.eye(2), np.zeros(2)), Quadratic(np.eye(3), np.zeros(3))),
                dim=2,
            )

    def test_custom_objective_evaluates(self):
        problem = MOProblem(
            (Custom(lambda x: float(x @ x), lambda x: 2.0 * x),), dim=3, name="toy"
        )
        x = np.array([1.0, 2.0, 3.0])
        assert eval_objective(problem, 0, x) == 14.0
        assert (eval_gradient(problem, 0, x) == 2.0 * x).all()

    def test_curve_wrapper_constant_map(self):
        problem = single_objective(
            Quadratic(np.eye(2), np.zeros(2)), dim=2, minimizer=np.zeros(2)
        )
        assert isinstance(problem.front, ParetoCurve)
        assert (pareto_point(problem.front, 0.3) == 0.0).all()
        batch = problem.front.map(np.linspace(0.0, 1.0, 5))
        assert batch.shape == (5, 2)

    def test_logsumexp_shape_validation(self):
        with pytest.raises(DomainError):
            LogSumExp(np.ones((3, 2)), np.ones(4))
