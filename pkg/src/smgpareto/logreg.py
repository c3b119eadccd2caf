"""Binary logistic regression over grouped data: LIBSVM parsing, group
splits on a binary feature, regularized group losses, and the two-objective
fairness problem whose Pareto front trades group accuracies against each
other.

LIBSVM text format, one instance per line:

    <label> <index>:<value> <index>:<value> ...

with 1-based, strictly increasing indices. Source labels {-1,+1} are kept;
any other pair of two distinct values is mapped (smaller -> -1,
larger -> +1), which covers the common {0,1} and {1,2} encodings.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field

import numpy as np

from .core import BoxRegion, as_vector
from .problems import Problem

__all__ = [
    "ParseError",
    "Dataset",
    "GroupSplit",
    "LinearModel",
    "parse_libsvm",
    "serialize_libsvm",
    "split_by_feature",
    "group_objective_value",
    "group_objective_gradient",
    "accuracy",
    "make_group_problem",
    "make_fairness_problem",
]

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(eq=False)
class Dataset:
    """Parsed instances: labels in {-1,+1} and sparse feature rows
    (0-based index -> value). ``feature_dim`` is the largest index seen."""

    labels: np.ndarray
    rows: tuple
    feature_dim: int
    _dense: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.labels.size

    def dense(self) -> np.ndarray:
        if self._dense is None:
            A = np.zeros((len(self), self.feature_dim))
            for i, row in enumerate(self.rows):
                for j, v in row:
                    A[i, j] = v
            self._dense = A
        return self._dense

    def __eq__(self, other) -> bool:
        return (isinstance(other, Dataset)
                and np.array_equal(self.labels, other.labels)
                and self.rows == other.rows
                and self.feature_dim == other.feature_dim)


def parse_libsvm(source) -> Dataset:
    """Parse LIBSVM text from a string, path-like, or text stream."""
    if isinstance(source, str) and "\n" not in source and ":" not in source:
        with open(source, "r") as fh:
            return parse_libsvm(fh)
    if isinstance(source, str):
        source = io.StringIO(source)

    raw_labels: list[float] = []
    rows: list[tuple] = []
    max_index = 0
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        tokens = line.split()
        try:
            label = float(tokens[0])
        except ValueError:
            raise ParseError(f"bad label {tokens[0]!r}", lineno) from None
        feats = []
        prev = 0
        for tok in tokens[1:]:
            idx_str, _, val_str = tok.partition(":")
            if not val_str:
                raise ParseError(f"malformed token {tok!r}", lineno)
            try:
                idx = int(idx_str)
                val = float(val_str)
            except ValueError:
                raise ParseError(f"malformed token {tok!r}", lineno) from None
            if idx < 1:
                raise ParseError(f"index {idx} must be >= 1", lineno)
            if idx <= prev:
                raise ParseError(f"index {idx} not strictly increasing", lineno)
            if not np.isfinite(val):
                raise ParseError(f"non-finite value in {tok!r}", lineno)
            prev = idx
            feats.append((idx - 1, val))
            max_index = max(max_index, idx)
        raw_labels.append(label)
        rows.append(tuple(feats))

    labels = np.asarray(raw_labels, dtype=float)
    distinct = sorted(set(labels.tolist()))
    if set(distinct) <= {-1.0, 1.0}:
        pass
    elif len(distinct) == 2:
        lo, hi = distinct
        logger.info("mapping source labels {%g: -1, %g: +1}", lo, hi)
        labels = np.where(labels == lo, -1.0, 1.0)
    else:
        raise ParseError(f"labels must take two values, got {distinct}", 0)
    return Dataset(labels=labels, rows=tuple(rows), feature_dim=max_index)


def serialize_libsvm(d: Dataset) -> str:
    lines = []
    for y, row in zip(d.labels, d.rows):
        parts = ["+1" if y > 0 else "-1"]
        parts += [f"{j + 1}:{format(v, '.17g')}" for j, v in row]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GroupSplit:
    """Disjoint row index sets covering the dataset, split on one feature."""

    group1: np.ndarray
    group2: np.ndarray
    split_feature: int  # 1-based source index
    values: tuple      # (low, high) observed feature values


def split_by_feature(d: Dataset, feature_index: int) -> GroupSplit:
    """Split rows on a binary-valued feature (1-based index; absent
    entries count as 0). Group 1 takes the smaller value."""
    if not 1 <= feature_index <= d.feature_dim:
        raise ValueError(f"feature index {feature_index} out of range 1..{d.feature_dim}")
    col = d.dense()[:, feature_index - 1]
    distinct = np.unique(col)
    if distinct.size != 2:
        raise ValueError(
            f"feature {feature_index} is not binary: observed values {distinct.tolist()}")
    lo, hi = distinct
    g1 = np.flatnonzero(col == lo)
    g2 = np.flatnonzero(col == hi)
    return GroupSplit(group1=g1, group2=g2, split_feature=feature_index,
                      values=(float(lo), float(hi)))


@dataclass(frozen=True)
class LinearModel:
    """Separating hyperplane x . a + b; predicts +1 when nonnegative."""

    x: np.ndarray
    b: float

    @classmethod
    def zeros(cls, dim: int) -> "LinearModel":
        return cls(np.zeros(dim), 0.0)

    @classmethod
    def from_flat(cls, v) -> "LinearModel":
        v = as_vector(v, "model vector")
        return cls(v[:-1], float(v[-1]))

    def flat(self) -> np.ndarray:
        return np.concatenate([self.x, [self.b]])


def _margins(model: LinearModel, d: Dataset, J) -> tuple[np.ndarray, np.ndarray]:
    J = np.asarray(J, dtype=int)
    if J.size == 0:
        raise ValueError("group index set must be nonempty")
    A = d.dense()[J]
    y = d.labels[J]
    return y, A @ model.x + model.b


def group_objective_value(model: LinearModel, d: Dataset, J, reg: float) -> float:
    """Mean logistic loss over the group plus (reg/2) ||x||^2.
    The intercept is not regularized."""
    if reg < 0:
        raise ValueError("reg must be >= 0")
    y, z = _margins(model, d, J)
    # log(1 + exp(-y z)) evaluated stably for large margins
    loss = np.logaddexp(0.0, -y * z).mean()
    return float(loss + 0.5 * reg * model.x @ model.x)


def group_objective_gradient(model: LinearModel, d: Dataset, J, reg: float,
                             batch: int | None = None, rng=None) -> np.ndarray:
    """Gradient over (x, b) of the group objective, optionally on a
    minibatch sampled uniformly without replacement from J."""
    if reg < 0:
        raise ValueError("reg must be >= 0")
    J = np.asarray(J, dtype=int)
    if J.size == 0:
        raise ValueError("group index set must be nonempty")
    if batch is not None:
        if batch < 1:
            raise ValueError("batch must be >= 1")
        if batch > J.size:
            raise ValueError(f"batch {batch} exceeds group size {J.size}")
        J = rng.choice(J, size=batch, replace=False)
    A = d.dense()[J]
    y = d.labels[J]
    z = A @ model.x + model.b
    # sigma(-y z), stable for any margin
    s = np.exp(-np.logaddexp(0.0, y * z))
    coeff = -(y * s) / J.size
    grad_x = coeff @ A + reg * model.x
    grad_b = coeff.sum()
    return np.concatenate([grad_x, [grad_b]])


def accuracy(model: LinearModel, d: Dataset, J) -> float:
    """Fraction of the group classified correctly (boundary counts as +1)."""
    y, z = _margins(model, d, J)
    pred = np.where(z >= 0, 1.0, -1.0)
    return float((pred == y).mean())


def _logistic_problem(d: Dataset, groups, regs, name: str) -> Problem:
    dim = d.feature_dim + 1
    m = len(groups)
    groups = [np.asarray(J, dtype=int) for J in groups]
    for J in groups:
        if J.size == 0:
            raise ValueError("every group must be nonempty")

    def value(v):
        model = LinearModel.from_flat(v)
        return np.array([group_objective_value(model, d, J, reg)
                         for J, reg in zip(groups, regs)])

    def jac(v):
        model = LinearModel.from_flat(v)
        return np.vstack([group_objective_gradient(model, d, J, reg)
                          for J, reg in zip(groups, regs)])

    def stochastic(v, batches, rng):
        model = LinearModel.from_flat(v)
        rows = []
        for J, reg, b in zip(groups, regs, batches):
            # a batch covering the group is the exact gradient; skip sampling
            batch = None if b >= J.size else int(b)
            rows.append(group_objective_gradient(model, d, J, reg, batch=batch, rng=rng))
        return np.vstack(rows)

    return Problem(name, dim, m, BoxRegion.unbounded(dim), value, jac,
                   stochastic_fn=stochastic,
                   sampling_region=BoxRegion.cube(-0.5, 0.5, dim))


def make_group_problem(d: Dataset, J, reg: float, name: str = "logistic") -> Problem:
    """Single-objective regularized logistic loss over one row set."""
    return _logistic_problem(d, [J], [reg], name)


def make_fairness_problem(d: Dataset, split: GroupSplit, reg1: float = 1e-3,
                          reg2: float = 1e-3) -> Problem:
    """Two objectives, one regularized logistic loss per group. Decision
    variable is the flat (weights, intercept) vector."""
    return _logistic_problem(d, [split.group1, split.group2], [reg1, reg2],
                             "fair-logistic")
