"""Front-quality metrics: Purity, maximum hole size, point spread, and
Dolan-More performance profiles.

Purity of a front against a pooled reference is the fraction of its points
that survive in the reference. The two spread metrics work per objective
axis on the sorted values of the front plus a shared pair of extreme
points: Gamma is the largest consecutive gap, and Delta measures how far
the gap sizes deviate from uniform spacing (lower is better for both).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .front import nondominated_mask

__all__ = [
    "FrontMetrics",
    "build_reference",
    "purity",
    "extreme_points",
    "gamma_spread",
    "delta_spread",
    "performance_profile",
    "compare_fronts",
]


@dataclass(frozen=True)
class FrontMetrics:
    purity: float
    gamma: float
    delta: float


def _as_front(F, name="front") -> np.ndarray:
    F = np.asarray(F, dtype=float)
    if F.ndim == 1:
        F = F.reshape(1, -1)
    if F.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array of objective vectors")
    if F.size and not np.isfinite(F).all():
        raise ValueError(f"{name} contains non-finite values")
    return F


def build_reference(fronts) -> np.ndarray:
    """Nondominated subset (strict dominance) of the union of the fronts."""
    mats = [_as_front(F) for F in fronts if np.asarray(F).size]
    if not mats:
        return np.empty((0, 0))
    pooled = np.vstack(mats)
    return pooled[nondominated_mask(pooled)]


def purity(front, reference, tol: float = 1e-9) -> float:
    """Fraction of front members within infinity-norm tol of the reference."""
    front = _as_front(front)
    if front.shape[0] == 0:
        raise ValueError("purity of an empty front is undefined")
    reference = _as_front(reference, "reference")
    if reference.shape[0] == 0:
        return 0.0
    hits = 0
    for row in front:
        if (np.abs(reference - row).max(axis=1) <= tol).any():
            hits += 1
    return hits / front.shape[0]


def _dedup_rows(F: np.ndarray) -> np.ndarray:
    seen = set()
    keep = []
    for i, row in enumerate(F):
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return F[keep]


def extreme_points(reference) -> np.ndarray:
    """The (min, max) pair along the objective axis with the widest range.

    Ties between axes break to the lowest objective index; exact duplicate
    rows are dropped first. Returns a (2, m) array (low point, high point).
    """
    reference = _dedup_rows(_as_front(reference, "reference"))
    if reference.shape[0] < 2:
        raise ValueError("need at least two distinct points for extremes")
    ranges = reference.max(axis=0) - reference.min(axis=0)
    k = int(np.argmax(ranges))
    lo = reference[int(np.argmin(reference[:, k]))]
    hi = reference[int(np.argmax(reference[:, k]))]
    return np.vstack([lo, hi])


def _axis_gaps(front: np.ndarray, extremes: np.ndarray):
    """Per-axis sorted gaps over the front plus the two extreme points.
    Front rows exactly equal to an extreme are dropped first."""
    front = _as_front(front)
    extremes = _as_front(extremes, "extremes")
    if front.size:
        coincide = np.zeros(front.shape[0], dtype=bool)
        for e in extremes:
            coincide |= (front == e).all(axis=1)
        front = front[~coincide]
    M = front.shape[0]
    gaps = []
    for i in range(extremes.shape[1]):
        vals = np.sort(np.concatenate([front[:, i] if M else np.empty(0),
                                       extremes[:, i]]))
        gaps.append(np.diff(vals))
    return M, gaps


def gamma_spread(front, extremes) -> float:
    """Largest gap between consecutive sorted values on any axis,
    extremes included."""
    _, gaps = _axis_gaps(front, extremes)
    return float(max(g.max() for g in gaps))


def delta_spread(front, extremes) -> float:
    """Normalized deviation of the gap sizes from uniform spacing.

    With M front points (after dropping any that coincide with an extreme)
    each axis has M+1 gaps d_0..d_M; the interior gaps d_1..d_{M-1} have
    mean dbar and the axis score is
    (d_0 + d_M + sum |d_j - dbar|) / (d_0 + d_M + (M-1) dbar).
    For M = 1 there are no interior gaps and the score degenerates to 1.
    """
    M, gaps = _axis_gaps(front, extremes)
    if M < 1:
        raise ValueError("point spread needs at least one point besides the extremes")
    scores = []
    for d in gaps:
        interior = d[1:M]
        dbar = interior.mean() if interior.size else 0.0
        num = d[0] + d[M] + np.abs(interior - dbar).sum()
        den = d[0] + d[M] + (M - 1) * dbar
        if den == 0:
            raise ValueError("degenerate front: zero total spread on an axis")
        scores.append(num / den)
    return float(max(scores))


def performance_profile(values, higher_is_better: bool = False):
    """Dolan-More profiles for a solver-by-problem table of metric values.

    Ratios are value/best per problem (best/value when higher is better),
    so 1 marks the best solver on a problem. Returns (taus, rho) where
    rho[s, t] is the fraction of problems with ratio <= taus[t].
    """
    V = np.asarray(values, dtype=float)
    if V.ndim != 2 or V.size == 0:
        raise ValueError("values must be a nonempty solvers-by-problems matrix")
    if not np.isfinite(V).all() or (V <= 0).any():
        raise ValueError("values must be finite and positive")
    if higher_is_better:
        ratios = V.max(axis=0) / V
    else:
        ratios = V / V.min(axis=0)
    taus = np.unique(ratios)
    rho = (ratios[:, :, None] <= taus[None, None, :]).mean(axis=1)
    return taus, rho


def compare_fronts(named_fronts: dict, tol: float = 1e-9) -> dict[str, FrontMetrics]:
    """Purity/Gamma/Delta for each named front against their pooled
    reference, sharing one extreme pair so the spreads are comparable."""
    if len(named_fronts) == 0:
        raise ValueError("need at least one front")
    fronts = {name: _as_front(F, name) for name, F in named_fronts.items()}
    reference = build_reference(list(fronts.values()))
    extremes = extreme_points(reference)
    out = {}
    for name, F in fronts.items():
        out[name] = FrontMetrics(
            purity=purity(F, reference, tol=tol),
            gamma=gamma_spread(F, extremes),
            delta=delta_spread(F, extremes),
        )
    return out
