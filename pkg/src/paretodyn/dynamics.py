"""Time integration of the damped inertial multiobjective flow.

The flagship system couples inertia with a vanishing friction coefficient
``alpha / t``::

    (alpha / t) x'(t) + proj_{C(x(t)) + x''(t)}(0) = 0,

where ``C(x)`` is the convex hull of the objective gradients.  Stepping uses
the first-order reformulation: pick a hull element ``g`` from the optimal
face of ``argmin_{g in C(x)} <g, -v>`` (minimum-norm element when the
velocity vanishes), then advance the damped velocity.

Also provided: the first-order steepest common-descent flow
``x' + proj_{C(x)}(0) = 0`` and, as the single-objective oracle, the damped
scalar flow ``x'' + (alpha / t) x' + grad f(x) = 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .hullgeom import Selection, SimplexWeights, _min_norm, _select
from .problems import DomainError, MOProblem, ObjectiveSpec

__all__ = [
    "DivergenceError",
    "SchemeVariant",
    "IntegratorConfig",
    "State",
    "TrajectoryRecord",
    "step_inertial",
    "step_descent",
    "step_scalar",
    "integrate",
]

DIVERGENCE_RADIUS = 1e9
FACE_ITER_CAP = 10


class DivergenceError(RuntimeError):
    """Trajectory left the finite/bounded regime; carries the failing step."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class SchemeVariant(str, Enum):
    """Discretizations of the implicit second-order update.

    ``SEMI_IMPLICIT_DAMPING`` treats the friction term implicitly and the
    face selection explicitly (at the incoming velocity).
    ``CENTRAL_DIFFERENCE`` solves the central finite-difference relation by
    iterating the face selection at the outgoing velocity until the face is
    stable; once it is, the update coincides with the semi-implicit one.
    ``EXPLICIT_EULER`` is the plain explicit velocity update.
    """

    SEMI_IMPLICIT_DAMPING = "semi-implicit-damping"
    EXPLICIT_EULER = "explicit-euler"
    CENTRAL_DIFFERENCE = "central-difference"


@dataclass(frozen=True, eq=False)
class IntegratorConfig:
    alpha: float
    t0: float = 1.0
    h: float = 1e-3
    steps: int = 100_000
    scheme: SchemeVariant = SchemeVariant.SEMI_IMPLICIT_DAMPING
    v_tol: float = 1e-9
    tie_tol: float = 1e-9
    qp_tol: float = 1e-10

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if self.t0 <= 0.0:
            # The friction coefficient alpha / t is singular at t = 0.
            raise ValueError("t0 must be positive")
        if self.h <= 0.0:
            raise ValueError("h must be positive")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.h * self.alpha / self.t0 >= 1.0:
            warnings.warn(
                "h * alpha / t0 >= 1: the damped update is heavily implicit; "
                "consider a smaller step",
                stacklevel=2,
            )


@dataclass(frozen=True, eq=False)
class State:
    t: float
    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v)) and np.isfinite(self.t)):
            raise DomainError("state contains non-finite entries")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """Fully recorded run: K+1 states plus the K per-step selections."""

    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    weights: np.ndarray
    directions: np.ndarray
    config: IntegratorConfig | None = None
    face_warnings: tuple[int, ...] = field(default=())

    def __post_init__(self):
        n = self.times.shape[0]
        if self.positions.shape[0] != n or self.velocities.shape[0] != n:
            raise ValueError("state series lengths disagree")
        if self.weights.shape[0] != n - 1 or self.directions.shape[0] != n - 1:
            raise ValueError("selection series must have one entry per step")
        if self.weights.size:
            if self.weights.min() < 0.0 or np.abs(self.weights.sum(axis=1) - 1.0).max() > 1e-12:
                raise ValueError("weight rows must lie in the unit simplex")

    @property
    def steps(self) -> int:
        return self.times.shape[0] - 1


def _damped_update(x, v, g, t, alpha, h):
    """Shared implicit-friction update; both flows must use this expression
    so the m = 1 reduction stays bitwise exact."""
    v_new = (v - h * g) / (1.0 + h * alpha / t)
    x_new = x + h * v_new
    return x_new, v_new


def _advance(grad_rows, x, v, t, cfg: IntegratorConfig):
    """One step of the inertial flow on raw arrays.

    Returns (x, v, theta, g, face, face_warn).
    """
    G = grad_rows(x)
    h = cfg.h
    alpha = cfg.alpha
    if cfg.scheme is SchemeVariant.CENTRAL_DIFFERENCE:
        v_hat = v
        face_prev = None
        warn = True
        for _ in range(FACE_ITER_CAP):
            theta, g, face = _select(G, v_hat, cfg.v_tol, cfg.tie_tol, cfg.qp_tol)
            v_hat = (v - h * g) / (1.0 + h * alpha / t)
            if face == face_prev:
                warn = False
                break
            face_prev = face
        x_new = x + h * v_hat
        return x_new, v_hat, theta, g, face, warn
    theta, g, face = _select(G, v, cfg.v_tol, cfg.tie_tol, cfg.qp_tol)
    if cfg.scheme is SchemeVariant.EXPLICIT_EULER:
        v_new = v + h * (-(alpha / t) * v - g)
        x_new = x + h * v_new
    else:
        x_new, v_new = _damped_update(x, v, g, t, alpha, h)
    return x_new, v_new, theta, g, face, False


def step_inertial(
    problem: MOProblem, state: State, cfg: IntegratorConfig
) -> tuple[State, Selection]:
    """Advance the inertial flow by one step of ``cfg.h``.

    Returns the new state and the hull selection that produced it.  A
    central-difference face iteration that fails to stabilize within its cap
    falls back to the last selection; :func:`integrate` records those steps.
    """
    if state.t < cfg.t0:
        raise DomainError(f"state time {state.t} precedes t0 = {cfg.t0}")
    x, v, theta, g, face, _ = _advance(
        problem.gradient_rows, state.x, state.v, state.t, cfg
    )
    sel = Selection(SimplexWeights(theta), g, face)
    return State(state.t + cfg.h, x, v), sel


def step_descent(problem: MOProblem, state: State, h: float) -> State:
    """Explicit Euler step of the steepest common-descent flow.

    ``x <- x - h * proj_{C(x)}(0)``; the state's velocity field is ignored
    and carried through unchanged.  Fixed points are exactly the Pareto
    critical points.
    """
    if h <= 0.0:
        raise ValueError("h must be positive")
    theta, g = _min_norm(problem.gradient_rows(state.x), 1e-10)
    return State(state.t + h, state.x - h * g, state.v)


def step_scalar(objective: ObjectiveSpec, state: State, alpha: float, h: float) -> State:
    """Damped inertial step for a single smooth objective.

    Exists as the m = 1 oracle: on a one-objective problem
    :func:`step_inertial` must reproduce it bitwise.
    """
    g = np.asarray(objective.gradient(state.x), dtype=float)
    x_new, v_new = _damped_update(state.x, state.v, g, state.t, alpha, h)
    return State(state.t + h, x_new, v_new)


def integrate(problem: MOProblem, x0, cfg: IntegratorConfig, v0=None) -> TrajectoryRecord:
    """Integrate the inertial flow from ``x0`` with full recording.

    The initial velocity defaults to zero; the level-set and energy
    certificates assume that default, and overriding it voids them.  The run
    aborts with :class:`DivergenceError` if the state leaves the finite
    regime or ``||x||`` exceeds ``DIVERGENCE_RADIUS``.
    """
    x = np.array(x0, dtype=float)
    if x.shape != (problem.dim,):
        raise DomainError(f"x0 must have shape ({problem.dim},)")
    if not np.all(np.isfinite(x)):
        raise DomainError("x0 contains non-finite entries")
    if v0 is None:
        v = np.zeros(problem.dim)
    else:
        v = np.array(v0, dtype=float)
        if v.shape != (problem.dim,) or not np.all(np.isfinite(v)):
            raise DomainError("v0 must be a finite vector matching x0")

    K = cfg.steps
    d = problem.dim
    m = problem.m
    times = np.empty(K + 1)
    positions = np.empty((K + 1, d))
    velocities = np.empty((K + 1, d))
    weights = np.empty((K, m))
    directions = np.empty((K, d))
    times[0] = cfg.t0
    positions[0] = x
    velocities[0] = v

    grad_rows = problem.gradient_rows
    face_warnings: list[int] = []
    t = cfg.t0
    for k in range(K):
        # t accumulates exactly as the public step functions advance it, so
        # composing them reproduces this loop bitwise.
        x, v, theta, g, _, warn = _advance(grad_rows, x, v, t, cfg)
        t = t + cfg.h
        times[k + 1] = t
        if warn:
            face_warnings.append(k)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise DivergenceError(f"non-finite state at step {k}", step=k)
        if x @ x > DIVERGENCE_RADIUS**2:
            raise DivergenceError(f"||x|| exceeded {DIVERGENCE_RADIUS:g} at step {k}", step=k)
        positions[k + 1] = x
        velocities[k + 1] = v
        weights[k] = theta
        directions[k] = g

    return TrajectoryRecord(
        times, positions, velocities, weights, directions, cfg, tuple(face_warnings)
    )
