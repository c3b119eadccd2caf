"""Minimum-norm point of the convex hull of a set of gradients.

The direction used by multi-gradient descent is the solution of

    min  || sum_i w_i g_i ||^2   s.t.  w in the unit simplex,

whose negation is a common descent direction for all objectives. A zero
minimum certifies Pareto stationarity (the origin lies in the convex hull
of the gradients).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_vector

__all__ = [
    "MultiGradient",
    "project_simplex",
    "solve_min_norm",
    "solve_min_norm_pair",
    "is_pareto_stationary",
    "validate_simplex_weights",
]

# Weight updates smaller than this are treated as a converged fixed point.
_WEIGHT_STALL = 1e-14


@dataclass(frozen=True)
class MultiGradient:
    """Combined gradient ``sum_i weights[i] * g_i`` (not negated) with its weights."""

    direction: np.ndarray
    weights: np.ndarray
    norm: float


def validate_simplex_weights(w, tol: float = 1e-12) -> np.ndarray:
    w = as_vector(w, "weights")
    if (w < -tol).any():
        raise ValueError("weights must be nonnegative")
    if abs(w.sum() - 1.0) > tol:
        raise ValueError(f"weights must sum to one, got {w.sum()!r}")
    return w


def project_simplex(v) -> np.ndarray:
    """Euclidean projection onto the unit simplex (sort-and-threshold)."""
    v = as_vector(v, "v")
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    positive = u - (css - 1.0) / idx > 0
    rho = idx[positive][-1]
    theta = (css[rho - 1] - 1.0) / rho
    return np.maximum(v - theta, 0.0)


def _as_gradient_matrix(gradients) -> np.ndarray:
    G = np.asarray(gradients, dtype=float)
    if G.ndim == 1:
        G = G.reshape(1, -1)
    if G.ndim != 2 or G.shape[0] == 0 or G.shape[1] == 0:
        raise ValueError("gradients must form a nonempty m-by-n matrix")
    if not np.isfinite(G).all():
        raise ValueError("gradients contain non-finite entries")
    return G


def solve_min_norm(gradients, tol: float = 1e-10, max_iters: int | None = None) -> MultiGradient:
    """Minimize ``||sum_i w_i g_i||^2`` over the simplex by projected gradient.

    Iterates ``w <- proj_simplex(w - s * 2 A w)`` with Gram matrix
    ``A = G G^T`` and step ``s = 1 / (2 ||A||_F + eps)``, starting from
    uniform weights. Stops once the objective improvement drops below
    ``tol`` and the weight vector has stalled, which in practice drives
    the iterate to the floating-point fixed point. Deterministic for
    fixed inputs; for ties (e.g. identical gradients) this returns the
    limit of the iteration from the uniform start.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    G = _as_gradient_matrix(gradients)
    m = G.shape[0]
    if m == 1:
        d = G[0].copy()
        return MultiGradient(d, np.ones(1), float(np.linalg.norm(d)))
    if max_iters is None:
        max_iters = 10 * m * 1000

    A = G @ G.T
    step = 1.0 / (2.0 * np.linalg.norm(A, "fro") + 1e-16)
    w = np.full(m, 1.0 / m)
    obj = float(w @ A @ w)
    for _ in range(max_iters):
        w_new = project_simplex(w - step * 2.0 * (A @ w))
        obj_new = float(w_new @ A @ w_new)
        improvement = obj - obj_new
        moved = float(np.max(np.abs(w_new - w)))
        w, obj = w_new, obj_new
        if improvement < tol and moved < _WEIGHT_STALL:
            break
    d = w @ G
    return MultiGradient(d, w, float(np.linalg.norm(d)))


def solve_min_norm_pair(g1, g2) -> MultiGradient:
    """Closed form for two gradients: the nearest point to the origin on
    the segment [g1, g2]. Identical gradients get uniform weights."""
    g1 = as_vector(g1, "g1")
    g2 = as_vector(g2, "g2")
    if g1.shape != g2.shape:
        raise ValueError(f"dimension mismatch: {g1.shape} vs {g2.shape}")
    diff = g1 - g2
    denom = float(diff @ diff)
    if denom == 0.0:
        w1 = 0.5
    else:
        w1 = float(np.clip((g2 - g1) @ g2 / denom, 0.0, 1.0))
    w = np.array([w1, 1.0 - w1])
    d = w1 * g1 + (1.0 - w1) * g2
    return MultiGradient(d, w, float(np.linalg.norm(d)))


def is_pareto_stationary(gradients, tol: float = 1e-8) -> bool:
    """True iff the min-norm convex combination of the gradients is ~zero."""
    return solve_min_norm(gradients).norm <= tol
