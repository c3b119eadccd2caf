"""Shared vocabulary: decision vectors, box regions, dominance relations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "as_vector",
    "BoxRegion",
    "project_box",
    "dominates",
    "weakly_dominates",
]


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce ``v`` to a 1-D float array, rejecting NaN and Inf entries."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class BoxRegion:
    """Axis-aligned box, possibly unbounded per coordinate.

    ``lower``/``upper`` may contain ``-inf``/``+inf`` for coordinates
    without a bound. Projection treats those coordinates as free.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float).reshape(-1)
        up = np.asarray(self.upper, dtype=float).reshape(-1)
        if lo.shape != up.shape:
            raise ValueError("lower and upper must have the same dimension")
        if np.isnan(lo).any() or np.isnan(up).any():
            raise ValueError("bounds may be infinite but not NaN")
        if (lo > up).any():
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)

    @classmethod
    def cube(cls, lo: float, up: float, n: int) -> "BoxRegion":
        return cls(np.full(n, float(lo)), np.full(n, float(up)))

    @classmethod
    def unbounded(cls, n: int) -> "BoxRegion":
        return cls(np.full(n, -np.inf), np.full(n, np.inf))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def is_bounded(self) -> bool:
        return bool(np.isfinite(self.lower).all() and np.isfinite(self.upper).all())

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError("dimension mismatch between point and region")
        return bool(((x >= self.lower - tol) & (x <= self.upper + tol)).all())

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` points uniformly; requires finite bounds."""
        if not self.is_bounded:
            raise ValueError("cannot sample uniformly from an unbounded region")
        return rng.uniform(self.lower, self.upper, size=(size, self.dim))


def project_box(x, region: BoxRegion) -> np.ndarray:
    """Componentwise clamp of ``x`` onto the box. Idempotent, non-expansive."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != region.dim:
        raise ValueError(
            f"dimension mismatch: point has {x.shape[-1]} coords, region has {region.dim}"
        )
    return np.clip(x, region.lower, region.upper)


def _check_pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def dominates(a, b) -> bool:
    """True iff ``a`` is strictly smaller than ``b`` in every objective."""
    a, b = _check_pair(a, b)
    return bool((a < b).all())


def weakly_dominates(a, b) -> bool:
    """True iff ``a <= b`` componentwise and the vectors differ somewhere."""
    a, b = _check_pair(a, b)
    return bool((a <= b).all() and (a < b).any())
