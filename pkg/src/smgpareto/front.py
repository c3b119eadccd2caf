"""Pareto-front drivers: nondominated archive management, largest-hole
spawning, and the stochastic / deterministic multi-gradient front loops.

The driver keeps a list of mutually nondominated points. Each outer
iteration adds perturbed copies of the endpoints of the largest hole along
each objective axis, applies short bursts of (stochastic) multi-gradient
descent to every list point, appends the burst outputs, and removes
dominated points. It stops when the outer iteration budget is exhausted or
the list reaches its size cap (checked at iteration end, so the final list
may overshoot the cap).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import BoxRegion, project_box
from .problems import Problem
from .simplex import solve_min_norm, solve_min_norm_pair
from .solver import StepSchedule, step_size

__all__ = [
    "ArchiveEntry",
    "ParetoArchive",
    "PfConfig",
    "PfStats",
    "nondominated_mask",
    "weakly_nondominated_mask",
    "filter_nondominated",
    "largest_holes",
    "perturb_points",
    "run_pf",
]


class ArchiveEntry(NamedTuple):
    x: np.ndarray
    fx: np.ndarray


@dataclass
class ParetoArchive:
    """Decision points with their true objective values, mutually
    nondominated under strict componentwise dominance."""

    points: np.ndarray  # (N, n)
    values: np.ndarray  # (N, m)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def entries(self) -> list[ArchiveEntry]:
        return [ArchiveEntry(self.points[i], self.values[i]) for i in range(len(self))]

    @classmethod
    def from_entries(cls, entries: Sequence[ArchiveEntry]) -> "ParetoArchive":
        if len(entries) == 0:
            return cls(np.empty((0, 0)), np.empty((0, 0)))
        X = np.array([np.asarray(e.x, dtype=float) for e in entries])
        F = np.array([np.asarray(e.fx, dtype=float) for e in entries])
        return cls(X, F)


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of rows of F not strictly dominated by any other row."""
    F = np.asarray(F, dtype=float)
    N = F.shape[0]
    mask = np.ones(N, dtype=bool)
    if N <= 1:
        return mask
    block = 2048
    for start in range(0, N, block):
        stop = min(start + block, N)
        # dominated[j] for j in [start, stop): some row beats it everywhere
        lt = (F[:, None, :] < F[None, start:stop, :]).all(axis=2)
        mask[start:stop] = ~lt.any(axis=0)
    return mask


def weakly_nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Mask of rows not weakly dominated (<= everywhere, < somewhere) by
    another row. Exact duplicates of a surviving row are kept."""
    F = np.asarray(F, dtype=float)
    N = F.shape[0]
    mask = np.ones(N, dtype=bool)
    if N <= 1:
        return mask
    block = 2048
    for start in range(0, N, block):
        stop = min(start + block, N)
        le = (F[:, None, :] <= F[None, start:stop, :]).all(axis=2)
        lt = (F[:, None, :] < F[None, start:stop, :]).any(axis=2)
        mask[start:stop] = ~(le & lt).any(axis=0)
    return mask


def filter_nondominated(entries: Sequence[ArchiveEntry]) -> ParetoArchive:
    """Keep exactly the entries not strictly dominated by another entry,
    preserving input order."""
    arch = ParetoArchive.from_entries(entries)
    if len(arch) == 0:
        return arch
    keep = nondominated_mask(arch.values)
    return ParetoArchive(arch.points[keep], arch.values[keep])


def largest_holes(archive: ParetoArchive) -> list[tuple[int, int]]:
    """Per objective, the pair of archive indices bracketing the largest gap
    in sorted objective values. Ties break to the lowest sorted position.
    Fewer than two entries: no holes."""
    if len(archive) < 2:
        return []
    pairs = []
    for i in range(archive.values.shape[1]):
        order = np.argsort(archive.values[:, i], kind="stable")
        gaps = np.diff(archive.values[order, i])
        j = int(np.argmax(gaps))
        pairs.append((int(order[j]), int(order[j + 1])))
    return pairs


def perturb_points(x, r: int, radius, region: BoxRegion, rng) -> np.ndarray:
    """r uniform perturbations of x within +-radius, projected into region."""
    if r < 0:
        raise ValueError("r must be >= 0")
    x = np.asarray(x, dtype=float)
    radius = np.broadcast_to(np.asarray(radius, dtype=float), x.shape)
    if r == 0:
        return np.empty((0, x.size))
    u = rng.uniform(-radius, radius, size=(r, x.size))
    return project_box(x + u, region)


@dataclass(frozen=True)
class PfConfig:
    start_count: int = 30
    r: int = 5
    p: int = 2
    q: int = 2
    max_outer_iters: int = 1000
    max_list_size: int = 1500
    perturb_fraction: float = 0.05
    schedule: StepSchedule = field(default_factory=lambda: StepSchedule.halving(0.3, 200))
    seed: int = 0
    batch: int = 1
    threads: int = 1

    def __post_init__(self):
        for name in ("start_count", "r", "p", "q", "max_outer_iters", "max_list_size"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.perturb_fraction <= 0:
            raise ValueError("perturb_fraction must be positive")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class PfStats:
    outer_iters: int
    list_size: int
    wall_time_seconds: float


def _perturb_radius(x, region: BoxRegion, fraction: float) -> np.ndarray:
    bounded = np.isfinite(region.lower) & np.isfinite(region.upper)
    return np.where(bounded, fraction * (region.upper - region.lower),
                    fraction * (1.0 + np.abs(x)))


def _cull(entries: Sequence[ArchiveEntry]) -> ParetoArchive:
    arch = ParetoArchive.from_entries(entries)
    if len(arch) == 0:
        return arch
    keep = weakly_nondominated_mask(arch.values)
    return ParetoArchive(arch.points[keep], arch.values[keep])


def _dedup_entries(entries: list[ArchiveEntry]) -> list[ArchiveEntry]:
    seen = set()
    out = []
    for e in entries:
        key = np.asarray(e.x, dtype=float).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(e)
    return out


def run_pf(problem: Problem, cfg: PfConfig, mode: str = "smg",
           on_iteration: Callable[[int, ParetoArchive], None] | None = None,
           ) -> tuple[ParetoArchive, PfStats]:
    """Drive a nondominated list toward the Pareto front.

    mode "smg" applies cfg.p restarts of q stochastic multi-gradient steps
    to every list point; mode "mg" applies a single restart of q true
    multi-gradient steps (deterministic given the point, so restarts would
    duplicate). Burst steps at outer iteration k use schedule positions
    k*q .. k*q+q-1, so the step decays with the cumulative per-point
    iteration count. RNG streams derive from (seed, purpose, outer, point,
    restart), making the result independent of burst execution order.

    List culling removes weakly dominated entries: on box-constrained
    problems the projection parks iterates on boundary faces where one
    objective is constant, and strict-only removal would keep every such
    equal-valued point alive, flooding the list before it can converge.
    """
    if mode not in ("smg", "mg"):
        raise ValueError("mode must be 'smg' or 'mg'")
    if cfg.start_count < 1:
        raise ValueError("need at least one starting point")
    t0 = time.perf_counter()
    restarts = 1 if mode == "mg" else cfg.p

    init_rng = np.random.default_rng([cfg.seed, 0])
    X0 = problem.sampling_region.sample(init_rng, cfg.start_count)
    X0 = project_box(X0, problem.region)
    entries = _dedup_entries([ArchiveEntry(x, problem.value(x)) for x in X0])
    archive = _cull(entries)

    k = 0
    while k < cfg.max_outer_iters and len(archive) < cfg.max_list_size:
        work = list(archive.entries)

        # Spawn perturbed points at both endpoints of each axis' largest hole.
        pert_rng = np.random.default_rng([cfg.seed, 1, k])
        for a, b in largest_holes(archive):
            for idx in (a, b):
                x = archive.points[idx]
                radius = _perturb_radius(x, problem.region, cfg.perturb_fraction)
                for pt in perturb_points(x, cfg.r, radius, problem.region, pert_rng):
                    work.append(ArchiveEntry(pt, problem.value(pt)))
        work = _dedup_entries(work)

        def burst(task):
            i, t = task
            x = work[i].x
            rng = np.random.default_rng([cfg.seed, 2, k, i, t])
            for j in range(cfg.q):
                alpha = step_size(cfg.schedule, k * cfg.q + j)
                if mode == "mg":
                    G = problem.gradient(x)
                else:
                    G = problem.stochastic_gradient(x, cfg.batch, rng)
                mg = solve_min_norm_pair(G[0], G[1]) if problem.m == 2 else solve_min_norm(G)
                x = project_box(x - alpha * mg.direction, problem.region)
            return ArchiveEntry(x, problem.value(x))

        tasks = [(i, t) for i in range(len(work)) for t in range(restarts)]
        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                outputs = list(pool.map(burst, tasks))
        else:
            outputs = [burst(task) for task in tasks]

        archive = _cull(_dedup_entries(work + outputs))
        k += 1
        if on_iteration is not None:
            on_iteration(k, archive)

    stats = PfStats(outer_iters=k, list_size=len(archive),
                    wall_time_seconds=time.perf_counter() - t0)
    return archive, stats
