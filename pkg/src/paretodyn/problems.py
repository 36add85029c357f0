"""Smooth convex multiobjective problem instances.

A problem bundles m convex objectives on R^d with exact gradient evaluators
and, when available, a closed-form curve covering the part of the Pareto set
the experiments reach.  Two built-in instances ship with their curves
attached: a pair of strongly convex quadratics and a pair of log-sum-exp
objectives that are convex but not strongly convex.

Evaluators accept a single point of shape (d,) or a batch of shape (n, d);
user-supplied ``Custom`` callables should do the same if batch evaluation is
wanted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .hullgeom import GradientBundle

__all__ = [
    "DomainError",
    "EvaluationOverflowError",
    "Quadratic",
    "LogSumExp",
    "Custom",
    "ObjectiveSpec",
    "ParetoCurve",
    "MOProblem",
    "eval_objective",
    "eval_gradient",
    "eval_bundle",
    "pareto_point",
    "builtin_quadratic",
    "builtin_logsumexp",
    "single_objective",
]


class DomainError(ValueError):
    """Input outside an operation's domain (non-finite point, bad parameter)."""


class EvaluationOverflowError(ArithmeticError):
    """An evaluator produced a non-finite value or gradient."""


def _as_point(x, dim: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DomainError("expected a single point of shape (d,)")
    if dim is not None and x.shape[0] != dim:
        raise DomainError(f"expected dimension {dim}, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise DomainError("point contains non-finite entries")
    return x


@dataclass(frozen=True, eq=False)
class Quadratic:
    """``f(x) = 0.5 (x - anchor)^T Q (x - anchor)`` with symmetric PSD ``Q``.

    Positive semidefiniteness is verified at construction for d <= 8 via the
    symmetric eigenvalue solve; larger matrices are accepted unchecked.
    """

    Q: np.ndarray
    anchor: np.ndarray

    def __post_init__(self):
        Q = np.asarray(self.Q, dtype=float)
        anchor = np.asarray(self.anchor, dtype=float)
        if anchor.ndim != 1:
            raise DomainError("anchor must be a vector")
        if Q.shape != (anchor.size, anchor.size):
            raise DomainError("Q must be square and match the anchor dimension")
        if not np.allclose(Q, Q.T, rtol=0.0, atol=1e-12):
            raise DomainError("Q must be symmetric")
        if anchor.size <= 8:
            eigs = np.linalg.eigvalsh(Q)
            if eigs[0] < -1e-10 * max(1.0, float(eigs[-1])):
                raise DomainError("Q must be positive semidefinite")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "anchor", anchor)

    @property
    def dim(self) -> int:
        return self.anchor.size

    def value(self, x):
        r = np.asarray(x, dtype=float) - self.anchor
        return 0.5 * np.einsum("...i,ij,...j->...", r, self.Q, r)

    def gradient(self, x):
        # Q symmetric, so (x - a) @ Q == Q @ (x - a) row-wise.
        return (np.asarray(x, dtype=float) - self.anchor) @ self.Q


@dataclass(frozen=True, eq=False)
class LogSumExp:
    """``f(x) = log sum_j exp(a_j . x - b_j)`` with the rows ``a_j`` of ``A``.

    Value and gradient shift by the row-wise maximum before exponentiating,
    so entries of b on the order of +-20 (and beyond) cannot overflow.
    """

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.size:
            raise DomainError("A must be (p, d) with b of length p")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    def value(self, x):
        y = np.asarray(x, dtype=float) @ self.A.T - self.b
        peak = y.max(axis=-1, keepdims=True)
        out = peak[..., 0] + np.log(np.exp(y - peak).sum(axis=-1))
        return out

    def gradient(self, x):
        y = np.asarray(x, dtype=float) @ self.A.T - self.b
        y -= y.max(axis=-1, keepdims=True)
        w = np.exp(y)
        w /= w.sum(axis=-1, keepdims=True)
        return w @ self.A


@dataclass(frozen=True, eq=False)
class Custom:
    """Black-box objective from value/gradient callables.

    Convexity of custom objectives cannot be verified; the test-suite spot
    checks (midpoint convexity, gradient lower bound) are the only guard.
    """

    value_fn: Callable[[np.ndarray], float]
    gradient_fn: Callable[[np.ndarray], np.ndarray]
    dim_hint: int | None = None

    @property
    def dim(self) -> int | None:
        return self.dim_hint

    def value(self, x):
        return np.asarray(self.value_fn(np.asarray(x, dtype=float)), dtype=float)

    def gradient(self, x):
        return np.asarray(self.gradient_fn(np.asarray(x, dtype=float)), dtype=float)


ObjectiveSpec = Union[Quadratic, LogSumExp, Custom]


@dataclass(frozen=True, eq=False)
class ParetoCurve:
    """Curve ``lam in [0, 1] -> point`` covering the relevant weak Pareto set.

    ``map`` must accept a scalar or a 1-D array of parameters and return the
    matching (d,) or (n, d) points.  ``injective_values`` asserts that the
    objective vector is injective along the curve, which collapses the inner
    infimum of the merit and radius computations to the curve point itself.
    """

    map: Callable[[np.ndarray], np.ndarray]
    injective_values: bool = True


@dataclass(frozen=True, eq=False)
class MOProblem:
    """m smooth convex objectives sharing one domain dimension."""

    objectives: tuple[ObjectiveSpec, ...]
    dim: int
    front: ParetoCurve | None = None
    name: str = ""

    def __post_init__(self):
        objectives = tuple(self.objectives)
        if len(objectives) < 1:
            raise DomainError("a problem needs at least one objective")
        for i, obj in enumerate(objectives):
            if obj.dim is not None and obj.dim != self.dim:
                raise DomainError(f"objective {i} has dimension {obj.dim} != {self.dim}")
        object.__setattr__(self, "objectives", objectives)

    @property
    def m(self) -> int:
        return len(self.objectives)

    def values(self, x) -> np.ndarray:
        return np.array([float(obj.value(x)) for obj in self.objectives])

    def gradient_rows(self, x) -> np.ndarray:
        return np.stack([obj.gradient(x) for obj in self.objectives])

    def values_batch(self, X) -> np.ndarray:
        """Objective values for a batch of points, shape (n, d) -> (n, m)."""
        X = np.asarray(X, dtype=float)
        cols = []
        for obj in self.objectives:
            if isinstance(obj, Custom):
                cols.append(np.array([float(obj.value(row)) for row in X]))
            else:
                cols.append(np.asarray(obj.value(X), dtype=float))
        return np.stack(cols, axis=1)


def eval_objective(problem: MOProblem, i: int, x) -> float:
    """Value of objective ``i`` at ``x`` (0-based index)."""
    if not 0 <= i < problem.m:
        raise IndexError(f"objective index {i} out of range [0, {problem.m})")
    x = _as_point(x, problem.dim)
    value = float(problem.objectives[i].value(x))
    if not np.isfinite(value):
        raise EvaluationOverflowError(f"objective {i} evaluated to {value}")
    return value


def eval_gradient(problem: MOProblem, i: int, x) -> np.ndarray:
    """Gradient of objective ``i`` at ``x`` (0-based index)."""
    if not 0 <= i < problem.m:
        raise IndexError(f"objective index {i} out of range [0, {problem.m})")
    x = _as_point(x, problem.dim)
    grad = np.asarray(problem.objectives[i].gradient(x), dtype=float)
    if grad.shape != (problem.dim,):
        raise EvaluationOverflowError(f"gradient {i} has shape {grad.shape}")
    if not np.all(np.isfinite(grad)):
        raise EvaluationOverflowError(f"gradient {i} contains non-finite entries")
    return grad


def eval_bundle(problem: MOProblem, x) -> tuple[np.ndarray, GradientBundle]:
    """All objective values and the gradient bundle at ``x``."""
    x = _as_point(x, problem.dim)
    values = np.array([eval_objective(problem, i, x) for i in range(problem.m)])
    grads = np.stack([eval_gradient(problem, i, x) for i in range(problem.m)])
    return values, GradientBundle(grads)


def pareto_point(front: ParetoCurve, lam: float) -> np.ndarray:
    """Point of the parametrized Pareto curve at parameter ``lam``."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"curve parameter {lam} outside [0, 1]")
    return np.asarray(front.map(lam), dtype=float)


def builtin_quadratic() -> MOProblem:
    """Two strongly convex quadratics on R^2 with a hyperbolic Pareto curve.

    ``f_i(x) = 0.5 (x - x^i)^T Q_i (x - x^i)`` with ``Q_1 = diag(2, 1)``,
    ``Q_2 = diag(1, 2)``, anchors ``x^1 = (1, 0)`` and ``x^2 = (0, 1)``.  The
    Pareto set is ``lam -> (2 lam / (1 + lam), 2 (1 - lam) / (2 - lam))``.
    """

    def curve(lam):
        lam = np.asarray(lam, dtype=float)
        return np.stack([2.0 * lam / (1.0 + lam), 2.0 * (1.0 - lam) / (2.0 - lam)], axis=-1)

    objectives = (
        Quadratic(np.diag([2.0, 1.0]), np.array([1.0, 0.0])),
        Quadratic(np.diag([1.0, 2.0]), np.array([0.0, 1.0])),
    )
    return MOProblem(objectives, dim=2, front=ParetoCurve(curve), name="quadratic")


def builtin_logsumexp() -> MOProblem:
    """Two log-sum-exp objectives on R^2, convex but not strongly convex.

    Both objectives share the coefficient rows (+-10, +-10); the offset
    vectors are ``b^1 = (0, -20, 0, 20)`` and ``b^2 = (0, 20, 0, -20)``.  The
    Pareto set is the segment ``lam -> (-1 + 2 lam, 1 - 2 lam)``.
    """
    A = np.array([[10.0, 10.0], [10.0, -10.0], [-10.0, -10.0], [-10.0, 10.0]])

    def curve(lam):
        lam = np.asarray(lam, dtype=float)
        return np.stack([-1.0 + 2.0 * lam, 1.0 - 2.0 * lam], axis=-1)

    objectives = (
        LogSumExp(A, np.array([0.0, -20.0, 0.0, 20.0])),
        LogSumExp(A, np.array([0.0, 20.0, 0.0, -20.0])),
    )
    return MOProblem(objectives, dim=2, front=ParetoCurve(curve), name="logsumexp")


def single_objective(
    objective: ObjectiveSpec, dim: int, minimizer=None, name: str = ""
) -> MOProblem:
    """Wrap one objective as an m = 1 problem.

    With a known ``minimizer`` the attached constant curve makes the merit
    machinery applicable, where it reduces to ``f(x) - f(minimizer)``.
    """
    front = None
    if minimizer is not None:
        minimizer = _as_point(minimizer, dim)

        def curve(lam):
            lam = np.asarray(lam, dtype=float)
            return np.broadcast_to(minimizer, lam.shape + minimizer.shape).copy()

        front = ParetoCurve(curve)
    return MOProblem((objective,), dim=dim, front=front, name=name)
