"""Stochastic multi-gradient descent: step schedules, the projected
iteration, dynamic batch sizing, and a bias measurement harness.

Each iteration samples one stochastic gradient per objective, combines them
through the min-norm simplex subproblem, and takes a projected step along
the negated combination. There is no stopping criterion beyond the
iteration budget; the min-norm value on true gradients is available as a
stationarity diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoxRegion, as_vector, project_box
from .problems import Problem
from .simplex import MultiGradient, solve_min_norm, solve_min_norm_pair

__all__ = [
    "StepSchedule",
    "step_size",
    "SmgConfig",
    "SmgTrace",
    "BatchPolicy",
    "smg_step",
    "run_smg",
    "dynamic_batch_size",
    "measure_bias",
]


@dataclass(frozen=True)
class StepSchedule:
    """Positive, non-increasing step sequence, evaluated at 0-based k."""

    kind: str
    alpha0: float = 0.0
    c: float = 0.0
    gamma: float = 0.0
    period: int = 0

    @classmethod
    def constant(cls, alpha: float) -> "StepSchedule":
        return cls("constant", alpha0=alpha)

    @classmethod
    def strongly_convex(cls, c: float) -> "StepSchedule":
        return cls("strongly_convex", c=c)

    @classmethod
    def harmonic(cls, gamma: float) -> "StepSchedule":
        return cls("harmonic", gamma=gamma)

    @classmethod
    def sqrt(cls, alpha: float) -> "StepSchedule":
        return cls("sqrt", alpha0=alpha)

    @classmethod
    def halving(cls, alpha0: float, period: int = 200) -> "StepSchedule":
        return cls("halving", alpha0=alpha0, period=period)


def step_size(schedule: StepSchedule, k: int) -> float:
    """Step at iteration k >= 0. One-based textbook schedules are shifted
    by one so that k = 0 is well defined."""
    if k < 0:
        raise ValueError("iteration index must be >= 0")
    kind = schedule.kind
    if kind == "constant":
        if schedule.alpha0 <= 0:
            raise ValueError("constant schedule needs alpha0 > 0")
        return schedule.alpha0
    if kind == "strongly_convex":
        if schedule.c <= 0:
            raise ValueError("strongly_convex schedule needs c > 0")
        return 2.0 / (schedule.c * (k + 2))
    if kind == "harmonic":
        if schedule.gamma <= 0:
            raise ValueError("harmonic schedule needs gamma > 0")
        return schedule.gamma / (k + 1)
    if kind == "sqrt":
        if schedule.alpha0 <= 0:
            raise ValueError("sqrt schedule needs alpha0 > 0")
        return schedule.alpha0 / np.sqrt(k + 1)
    if kind == "halving":
        if schedule.alpha0 <= 0 or schedule.period <= 0:
            raise ValueError("halving schedule needs alpha0 > 0 and period > 0")
        return schedule.alpha0 * 2.0 ** (-(k // schedule.period))
    raise ValueError(f"unknown schedule kind {kind!r}")


@dataclass(frozen=True)
class BatchPolicy:
    """Per-objective dynamic sampling: keep the gradient-noise bound
    sigma_i * sqrt(n) / sqrt(b_i) below alpha * (C_i + C_hat_i * proxy)."""

    sigma: np.ndarray
    n: int
    C: np.ndarray
    C_hat: np.ndarray
    grad_norm_proxy: float = 0.0

    def __post_init__(self):
        for name in ("sigma", "C", "C_hat"):
            object.__setattr__(self, name, np.atleast_1d(np.asarray(getattr(self, name), float)))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if (self.sigma < 0).any() or (self.C <= 0).any() or (self.C_hat < 0).any():
            raise ValueError("sigma >= 0, C > 0, C_hat >= 0 required")
        if self.grad_norm_proxy < 0:
            raise ValueError("grad_norm_proxy must be >= 0")


def dynamic_batch_size(policy: BatchPolicy, alpha: float) -> np.ndarray:
    """Smallest integer batches satisfying the noise bound at step alpha."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    denom = alpha * (policy.C + policy.C_hat * policy.grad_norm_proxy)
    if (denom == 0).any():
        raise ValueError("C + C_hat * grad_norm_proxy must be positive")
    b = np.ceil((policy.sigma * np.sqrt(policy.n) / denom) ** 2).astype(int)
    return np.maximum(b, 1)


def _combine(G: np.ndarray) -> MultiGradient:
    # Closed form for the common two-objective case; iterative solver otherwise.
    if G.shape[0] == 2:
        return solve_min_norm_pair(G[0], G[1])
    return solve_min_norm(G)


def smg_step(x, problem: Problem, alpha: float, batch, rng) -> tuple[np.ndarray, MultiGradient]:
    """One projected stochastic multi-gradient step from x."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    G = problem.stochastic_gradient(x, batch, rng)
    mg = _combine(G)
    x_new = project_box(x - alpha * mg.direction, problem.region)
    return x_new, mg


@dataclass(frozen=True)
class SmgConfig:
    max_iters: int
    schedule: StepSchedule
    batch: object = 1  # int or BatchPolicy
    seed: int = 0
    record_trajectory: bool = False

    def __post_init__(self):
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")
        if isinstance(self.batch, int) and self.batch < 1:
            raise ValueError("batch must be >= 1")


@dataclass
class SmgTrace:
    """Recorded run: values[k] and weights[k] are paired at iterate x_k
    (the weights computed there drive the step to x_{k+1})."""

    final_x: np.ndarray
    values: np.ndarray           # (K+1, m) true objective values at x_0..x_K
    weights: np.ndarray          # (K, m)
    steps: np.ndarray            # (K,)
    iterates: np.ndarray | None  # (K+1, n) when recorded

    @property
    def num_steps(self) -> int:
        return self.steps.size


def run_smg(x0, problem: Problem, cfg: SmgConfig) -> SmgTrace:
    """Run the stochastic multi-gradient iteration for cfg.max_iters steps.

    Reproducible bit for bit for a fixed seed; every iterate lies in the
    feasible region by construction of the projected step.
    """
    x = as_vector(x0, "x0")
    if not problem.region.contains(x):
        raise ValueError("x0 must lie in the feasible region")
    rng = np.random.default_rng(cfg.seed)
    K = cfg.max_iters
    values = np.empty((K + 1, problem.m))
    weights = np.empty((K, problem.m))
    steps = np.empty(K)
    iterates = np.empty((K + 1, problem.n)) if cfg.record_trajectory else None

    values[0] = problem.value(x)
    if iterates is not None:
        iterates[0] = x
    for k in range(K):
        alpha = step_size(cfg.schedule, k)
        batch = dynamic_batch_size(cfg.batch, alpha) if isinstance(cfg.batch, BatchPolicy) \
            else cfg.batch
        x, mg = smg_step(x, problem, alpha, batch, rng)
        weights[k] = mg.weights
        steps[k] = alpha
        values[k + 1] = problem.value(x)
        if iterates is not None:
            iterates[k + 1] = x
    return SmgTrace(final_x=x, values=values, weights=weights, steps=steps,
                    iterates=iterates)


def measure_bias(problem: Problem, x, batch_sizes, reps: int, rng,
                 weight_mode: str = "estimated") -> list[tuple[int, float, float]]:
    """Norm of the mean gap between the sampled combined gradient and the
    weighted true gradient, one value per batch size.

    weight_mode "estimated" pairs each sample with its own min-norm weights:
    the gap averaged is g - sum_i w_i(sample) grad f_i(x). weight_mode "true"
    compares the mean of g against the combination weighted by the
    full-information min-norm weights. Returns (batch, bias, stderr) triples,
    where stderr is the directional standard error of the bias estimate.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if weight_mode not in ("estimated", "true"):
        raise ValueError("weight_mode must be 'estimated' or 'true'")
    x = as_vector(x, "x")
    if problem.jacobian_fn is None:
        raise NotImplementedError(
            f"weight_mode={weight_mode!r} needs true gradients, which "
            f"{problem.name} does not expose")
    true_G = problem.gradient(x)
    if weight_mode == "true":
        target = _combine(true_G).direction

    results = []
    for b in batch_sizes:
        b = int(b)
        if b < 1:
            raise ValueError("batch sizes must be >= 1")
        gaps = np.empty((reps, problem.n))
        for r in range(reps):
            G = problem.stochastic_gradient(x, b, rng)
            mg = _combine(G)
            if weight_mode == "estimated":
                gaps[r] = mg.direction - mg.weights @ true_G
            else:
                gaps[r] = mg.direction - target
        mean = gaps.mean(axis=0)
        bias = float(np.linalg.norm(mean))
        u = mean / bias if bias > 0 else np.zeros_like(mean)
        centered = gaps - mean
        var_dir = float(np.mean((centered @ u) ** 2)) if bias > 0 \
            else float(np.mean(np.sum(centered ** 2, axis=1)) / problem.n)
        stderr = float(np.sqrt(var_dir / reps))
        results.append((b, bias, stderr))
    return results
