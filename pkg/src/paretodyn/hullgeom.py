"""Convex-hull geometry for gradient bundles.

Every step of the multiobjective flows projects against ``C(x)``, the convex
hull of the objective gradients at the current point.  This module provides
the small dense kernels for that geometry: the minimum-norm point of the
hull, the shifted projection, linear minimization with tie-face resolution,
and the velocity-driven selection rule used by the inertial dynamics.

All solvers return a dual certificate: the simplex weights ``theta`` with
``g = theta @ grads``, which every caller (and test) can recheck against the
vertex variational inequality ``<g_i - g, g> >= -tol``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "GradientBundle",
    "SimplexWeights",
    "Selection",
    "min_norm_in_hull",
    "project_shifted",
    "linear_min_face",
    "select_direction",
]

SIMPLEX_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Minimum-norm solve hit its iteration cap before certifying optimality."""

    def __init__(self, message: str, gap: float):
        super().__init__(message)
        self.gap = gap


@dataclass(frozen=True, eq=False)
class GradientBundle:
    """Stack of the m objective gradients at one point, as rows of ``grads``.

    The convex hull of the rows is the set every operation below works on.
    """

    grads: np.ndarray

    def __post_init__(self):
        grads = np.atleast_2d(np.asarray(self.grads, dtype=float))
        if grads.ndim != 2 or grads.shape[0] < 1:
            raise ValueError("bundle needs at least one gradient row")
        if not np.all(np.isfinite(grads)):
            raise ValueError("bundle contains non-finite entries")
        object.__setattr__(self, "grads", grads)

    @property
    def m(self) -> int:
        return self.grads.shape[0]

    @property
    def d(self) -> int:
        return self.grads.shape[1]


@dataclass(frozen=True, eq=False)
class SimplexWeights:
    """Point of the unit simplex; the dual certificate of every projection."""

    theta: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.ndim != 1 or theta.size < 1:
            raise ValueError("weights must be a nonempty vector")
        if theta.min() < 0.0:
            raise ValueError("weights must be nonnegative")
        if abs(theta.sum() - 1.0) > SIMPLEX_TOL:
            raise ValueError("weights must sum to one")
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True, eq=False)
class Selection:
    """A certified hull element: ``g = theta @ grads`` supported on ``active_face``."""

    weights: SimplexWeights
    g: np.ndarray
    active_face: tuple[int, ...]

    def __post_init__(self):
        theta = self.weights.theta
        outside = np.ones(theta.size, dtype=bool)
        outside[list(self.active_face)] = False
        if theta[outside].any():
            raise ValueError("weights must vanish outside the active face")

    @property
    def theta(self) -> np.ndarray:
        return self.weights.theta


def _support(theta: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.nonzero(theta > 0.0)[0])


def _min_norm(G: np.ndarray, tol: float, max_iter: int = 10_000):
    """Weights of the minimum-norm point of the hull of the rows of ``G``.

    m = 1 and m = 2 are closed form (the m = 2 case clamps the unconstrained
    scalar minimizer onto [0, 1]).  Larger bundles run an away-step
    conditional-gradient loop on the simplex with exact line search; the
    stopping certificate is the vertex variational inequality
    ``max_i <g - g_i, g> <= tol``.
    """
    m = G.shape[0]
    if m == 1:
        theta = np.ones(1)
        return theta, theta @ G
    if m == 2:
        diff = G[0] - G[1]
        dd = float(diff @ diff)
        if dd == 0.0:
            th = 0.5
        else:
            th = min(1.0, max(0.0, -float(G[1] @ diff) / dd))
        theta = np.array([th, 1.0 - th])
        return theta, theta @ G

    gram = G @ G.T
    theta = np.zeros(m)
    theta[int(np.argmin(np.diagonal(gram)))] = 1.0
    gap = np.inf
    for _ in range(max_iter):
        q = gram @ theta
        value = float(theta @ q)
        s = int(np.argmin(q))
        gap = value - float(q[s])
        if gap <= tol:
            return theta, theta @ G
        support = np.nonzero(theta > 0.0)[0]
        a = int(support[np.argmax(q[support])])
        if gap >= float(q[a]) - value:
            direction = -theta
            direction[s] += 1.0
            gamma_max = 1.0
        else:
            if theta[a] >= 1.0:
                break
            direction = theta.copy()
            direction[a] -= 1.0
            gamma_max = theta[a] / (1.0 - theta[a])
        gd = gram @ direction
        curvature = float(direction @ gd)
        slope = float(q @ direction)
        if curvature <= 0.0:
            gamma = gamma_max
        else:
            gamma = min(gamma_max, max(0.0, -slope / curvature))
        if gamma <= 0.0:
            break
        theta = theta + gamma * direction
        np.clip(theta, 0.0, None, out=theta)
        theta /= theta.sum()

    q = gram @ theta
    gap = float(theta @ q) - float(q.min())
    if gap > tol:
        raise ConvergenceError(
            f"minimum-norm solve stalled at duality gap {gap:.3e} > {tol:.3e}", gap=gap
        )
    return theta, theta @ G


def _face(G: np.ndarray, w: np.ndarray, tie_tol: float) -> np.ndarray:
    scores = G @ w
    lowest = float(scores.min())
    return np.nonzero(scores <= lowest + tie_tol * (1.0 + abs(lowest)))[0]


def _select(G: np.ndarray, v: np.ndarray, v_tol: float, tie_tol: float, qp_tol: float):
    """Raw-array core of :func:`select_direction`; returns (theta, g, face)."""
    m = G.shape[0]
    if m == 1:
        return np.ones(1), G[0].copy(), (0,)
    if float(v @ v) <= v_tol * v_tol:
        theta, g = _min_norm(G, qp_tol)
        return theta, g, _support(theta)
    face = _face(G, -v, tie_tol)
    if face.size == 1:
        i = int(face[0])
        theta = np.zeros(m)
        theta[i] = 1.0
        return theta, G[i].copy(), (i,)
    theta_face, g = _min_norm(G[face], qp_tol)
    theta = np.zeros(m)
    theta[face] = theta_face
    return theta, g, tuple(int(i) for i in face)


def min_norm_in_hull(bundle: GradientBundle, tol: float = 1e-10) -> Selection:
    """Minimum-norm element of the hull, with its simplex-weight certificate.

    The returned ``g`` satisfies ``<g_i - g, g> >= -tol`` for every bundle
    row ``g_i``; ``g`` is zero exactly when the bundle is Pareto critical.

    Raises :class:`ConvergenceError` (carrying the achieved gap) if the
    iterative solve for m >= 3 cannot certify the gap within its cap.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    theta, g = _min_norm(bundle.grads, tol)
    return Selection(SimplexWeights(theta), g, _support(theta))


def project_shifted(
    bundle: GradientBundle, shift: np.ndarray, tol: float = 1e-10
) -> tuple[Selection, np.ndarray]:
    """Minimum-norm element ``p`` of the shifted hull ``C + shift``.

    Returns the *unshifted* weights and hull element together with ``p``,
    so ``p == sel.g + shift`` up to rounding.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    shift = np.asarray(shift, dtype=float)
    if shift.shape != (bundle.d,):
        raise ValueError(f"shift must have dimension {bundle.d}")
    if not np.all(np.isfinite(shift)):
        raise ValueError("shift contains non-finite entries")
    theta, p = _min_norm(bundle.grads + shift, tol)
    g = theta @ bundle.grads
    return Selection(SimplexWeights(theta), g, _support(theta)), p


def linear_min_face(
    bundle: GradientBundle, w: np.ndarray, tie_tol: float = 1e-9
) -> tuple[int, ...]:
    """Indices of the (approximately) optimal vertices of ``min_g <g, w>``.

    A linear functional over the hull attains its minimum at a vertex; this
    returns every index within ``tie_tol * (1 + |min|)`` of the best score,
    so exact ties (duplicate rows, w = 0) land in one common face.
    """
    if tie_tol < 0.0:
        raise ValueError("tie_tol must be nonnegative")
    w = np.asarray(w, dtype=float)
    if w.shape != (bundle.d,):
        raise ValueError(f"w must have dimension {bundle.d}")
    return tuple(int(i) for i in _face(bundle.grads, w, tie_tol))


def select_direction(
    bundle: GradientBundle,
    v: np.ndarray,
    v_tol: float = 1e-9,
    tie_tol: float = 1e-9,
    qp_tol: float = 1e-10,
) -> Selection:
    """Hull element realizing the velocity-driven inclusion of the flow.

    For ``||v|| <= v_tol`` the set-valued right-hand side admits any hull
    element; this picks the minimum-norm one (consistent with steepest
    common descent and with zero initial velocity).  Otherwise the optimal
    face of ``argmin_{g in C} <g, -v>`` is computed and ties are broken
    deterministically by the minimum-norm element of that face.
    """
    if v_tol <= 0.0 or tie_tol < 0.0 or qp_tol <= 0.0:
        raise ValueError("tolerances must be positive")
    v = np.asarray(v, dtype=float)
    if v.shape != (bundle.d,):
        raise ValueError(f"v must have dimension {bundle.d}")
    theta, g, face = _select(bundle.grads, v, v_tol, tie_tol, qp_tol)
    return Selection(SimplexWeights(theta), g, face)
