"""Objective oracles: synthetic two-objective benchmarks, a variable-noise
wrapper, and simple analytic instances for solver studies.

The synthetic registry covers 13 classical problems from the multi-objective
test literature:

    ZDT1, ZDT2, ZDT3    Zitzler, Deb, Thiele (2000)
    JOS2                Jin, Olhofer, Sendhoff (2001), convex-concave front
    SP1                 Schaeffler, Schultz, Weinzierl (2002)
    IM1                 collection problem, f = (2 sqrt(x1), x1 (1 - x2) + 5)
    FF1                 Fonseca, Fleming (1995), n = 2
    Far1                Farina (2002), sums of Gaussian bumps
    SK1                 quartic pair with a disconnected front
    MOP1, MOP2, MOP3    Van Veldhuizen's suite (Schaffer, Fonseca, Poloni)
    DEB41               Deb (1999), biased search space, f2 = g(x2) / x1

Where several variants of a problem circulate (Far1, SK1, DEB41) the formula
implemented here is the one stated in this docstring and in the builder; all
oracles are covered by a finite-difference consistency test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import BoxRegion, as_vector, project_box

__all__ = [
    "Problem",
    "make_synthetic",
    "list_problems",
    "problem_names",
    "with_variable_noise",
    "make_quadratic_pair",
    "make_gaussian_population_pair",
    "BIAS_DEMO_MEANS",
]

# Guard for gradient formulas with a pole at x1 = 0 (ZDT1/3, JOS2).
_POLE_EPS = 1e-12


@dataclass
class Problem:
    """Bundle of m objective oracles over a box feasible region.

    ``value(x)`` returns the m objective values, ``gradient(x)`` the m-by-n
    matrix of true gradients, and ``stochastic_gradient(x, batch, rng)`` a
    sampled estimate (the true gradients for deterministic problems; such
    problems consume no randomness). ``batch`` may be a single int or a
    per-objective sequence. ``sampling_region`` is a finite box used to draw
    starting points; it equals ``region`` whenever the problem is bounded.
    """

    name: str
    n: int
    m: int
    region: BoxRegion
    value_fn: Callable[[np.ndarray], np.ndarray]
    jacobian_fn: Callable[[np.ndarray], np.ndarray] | None
    stochastic_fn: Callable | None = None
    sampling_region: BoxRegion | None = None
    geometry: str = ""

    def __post_init__(self):
        if self.sampling_region is None:
            if not self.region.is_bounded:
                raise ValueError(f"{self.name}: unbounded problems need a sampling_region")
            self.sampling_region = self.region

    def value(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.asarray(self.value_fn(x), dtype=float)

    def gradient(self, x) -> np.ndarray:
        if self.jacobian_fn is None:
            raise NotImplementedError(f"{self.name} does not expose true gradients")
        x = np.asarray(x, dtype=float)
        return np.asarray(self.jacobian_fn(x), dtype=float)

    def stochastic_gradient(self, x, batch, rng: np.random.Generator) -> np.ndarray:
        batches = self._batch_sizes(batch)
        x = np.asarray(x, dtype=float)
        if self.stochastic_fn is None:
            return self.gradient(x)
        return np.asarray(self.stochastic_fn(x, batches, rng), dtype=float)

    def _batch_sizes(self, batch) -> np.ndarray:
        b = np.asarray(batch, dtype=int)
        if b.ndim == 0:
            b = np.full(self.m, int(b))
        if b.size != self.m or (b < 1).any():
            raise ValueError("batch sizes must be >= 1, one per objective")
        return b


# ---------------------------------------------------------------------------
# Synthetic registry
# ---------------------------------------------------------------------------

def _zdt_g(x, n):
    return 1.0 + 9.0 * x[1:].sum() / (n - 1)


def _make_zdt1():
    n = 30
    k = 9.0 / (n - 1)

    def value(x):
        f1 = x[0]
        g = _zdt_g(x, n)
        return np.array([f1, g - np.sqrt(max(f1, 0.0) * g)])

    def jac(x):
        f1 = max(x[0], _POLE_EPS)
        g = _zdt_g(x, n)
        J = np.zeros((2, n))
        J[0, 0] = 1.0
        J[1, 0] = -0.5 * np.sqrt(g / f1)
        J[1, 1:] = k * (1.0 - 0.5 * np.sqrt(f1 / g))
        return J

    return Problem("ZDT1", n, 2, BoxRegion.cube(0, 1, n), value, jac, geometry="convex")


def _make_zdt2():
    n = 30
    k = 9.0 / (n - 1)

    def value(x):
        f1 = x[0]
        g = _zdt_g(x, n)
        return np.array([f1, g - f1 * f1 / g])

    def jac(x):
        f1 = x[0]
        g = _zdt_g(x, n)
        J = np.zeros((2, n))
        J[0, 0] = 1.0
        J[1, 0] = -2.0 * f1 / g
        J[1, 1:] = k * (1.0 + (f1 / g) ** 2)
        return J

    return Problem("ZDT2", n, 2, BoxRegion.cube(0, 1, n), value, jac, geometry="concave")


def _make_zdt3():
    n = 30
    k = 9.0 / (n - 1)

    def value(x):
        f1 = x[0]
        g = _zdt_g(x, n)
        return np.array([f1, g - np.sqrt(max(f1, 0.0) * g) - f1 * np.sin(10 * np.pi * f1)])

    def jac(x):
        f1 = max(x[0], _POLE_EPS)
        g = _zdt_g(x, n)
        J = np.zeros((2, n))
        J[0, 0] = 1.0
        t = 10 * np.pi * x[0]
        J[1, 0] = -0.5 * np.sqrt(g / f1) - np.sin(t) - 10 * np.pi * x[0] * np.cos(t)
        J[1, 1:] = k * (1.0 - 0.5 * np.sqrt(f1 / g))
        return J

    return Problem("ZDT3", n, 2, BoxRegion.cube(0, 1, n), value, jac, geometry="disconnected")


def _make_jos2():
    n = 10
    k = 9.0 / (n - 1)

    def value(x):
        f1 = x[0]
        g = _zdt_g(x, n)
        t = max(f1, 0.0) / g
        return np.array([f1, g * (1.0 - t ** 0.25 - t ** 4)])

    def jac(x):
        f1 = max(x[0], _POLE_EPS)
        g = _zdt_g(x, n)
        t = f1 / g
        J = np.zeros((2, n))
        J[0, 0] = 1.0
        J[1, 0] = -0.25 * t ** -0.75 - 4.0 * t ** 3
        J[1, 1:] = k * (1.0 - 0.75 * t ** 0.25 + 3.0 * t ** 4)
        return J

    return Problem("JOS2", n, 2, BoxRegion.cube(0, 1, n), value, jac, geometry="mixed")


def _make_sp1():
    def value(x):
        d = x[0] - x[1]
        return np.array([(x[0] - 1.0) ** 2 + d * d, (x[1] - 3.0) ** 2 + d * d])

    def jac(x):
        d = x[0] - x[1]
        return np.array([
            [2.0 * (x[0] - 1.0) + 2.0 * d, -2.0 * d],
            [2.0 * d, 2.0 * (x[1] - 3.0) - 2.0 * d],
        ])

    return Problem(
        "SP1", 2, 2, BoxRegion.unbounded(2), value, jac,
        sampling_region=BoxRegion.cube(-1, 5, 2), geometry="convex",
    )


def _make_im1():
    # Domain [1, 4] x [1, 2] from the source collection.
    region = BoxRegion(np.array([1.0, 1.0]), np.array([4.0, 2.0]))

    def value(x):
        return np.array([2.0 * np.sqrt(x[0]), x[0] * (1.0 - x[1]) + 5.0])

    def jac(x):
        return np.array([[1.0 / np.sqrt(x[0]), 0.0], [1.0 - x[1], -x[0]]])

    return Problem("IM1", 2, 2, region, value, jac, geometry="concave")


def _fonseca(n):
    a = 1.0 / np.sqrt(n)

    def value(x):
        return np.array([
            1.0 - np.exp(-np.sum((x - a) ** 2)),
            1.0 - np.exp(-np.sum((x + a) ** 2)),
        ])

    def jac(x):
        e1 = np.exp(-np.sum((x - a) ** 2))
        e2 = np.exp(-np.sum((x + a) ** 2))
        return np.vstack([2.0 * (x - a) * e1, 2.0 * (x + a) * e2])

    return value, jac


def _make_ff1():
    value, jac = _fonseca(2)
    return Problem(
        "FF1", 2, 2, BoxRegion.unbounded(2), value, jac,
        sampling_region=BoxRegion.cube(-2, 2, 2), geometry="concave",
    )


def _make_mop2():
    n = 15
    value, jac = _fonseca(n)
    return Problem("MOP2", n, 2, BoxRegion.cube(-4, 4, n), value, jac, geometry="concave")


# Far1: each objective is a signed sum of Gaussian bumps c * exp(k * (-(x1-a)^2 - (x2-b)^2)).
_FAR1_F1 = [(-2.0, 15.0, 0.1, 0.0), (-1.0, 20.0, 0.6, 0.6), (1.0, 20.0, -0.6, 0.6),
            (1.0, 20.0, 0.6, -0.6), (1.0, 20.0, -0.6, -0.6)]
_FAR1_F2 = [(2.0, 20.0, 0.0, 0.0), (1.0, 20.0, 0.4, 0.6), (-1.0, 20.0, -0.5, 0.7),
            (-1.0, 20.0, 0.5, -0.7), (1.0, 20.0, -0.4, -0.8)]


def _bump_sum(x, terms):
    v = 0.0
    g = np.zeros(2)
    for c, k, a, b in terms:
        e = c * np.exp(-k * ((x[0] - a) ** 2 + (x[1] - b) ** 2))
        v += e
        g[0] += e * (-2.0 * k) * (x[0] - a)
        g[1] += e * (-2.0 * k) * (x[1] - b)
    return v, g


def _make_far1():
    def value(x):
        return np.array([_bump_sum(x, _FAR1_F1)[0], _bump_sum(x, _FAR1_F2)[0]])

    def jac(x):
        return np.vstack([_bump_sum(x, _FAR1_F1)[1], _bump_sum(x, _FAR1_F2)[1]])

    return Problem("Far1", 2, 2, BoxRegion.cube(-1, 1, 2), value, jac, geometry="mixed")


def _make_sk1():
    def value(x):
        t = x[0]
        return np.array([
            -t ** 4 - 3.0 * t ** 3 + 10.0 * t ** 2 + 10.0 * t + 10.0,
            0.5 * t ** 4 + 2.0 * t ** 3 + 10.0 * t ** 2 - 10.0 * t + 5.0,
        ])

    def jac(x):
        t = x[0]
        return np.array([
            [-4.0 * t ** 3 - 9.0 * t ** 2 + 20.0 * t + 10.0],
            [2.0 * t ** 3 + 6.0 * t ** 2 + 20.0 * t - 10.0],
        ])

    return Problem(
        "SK1", 1, 2, BoxRegion.unbounded(1), value, jac,
        sampling_region=BoxRegion.cube(-5, 5, 1), geometry="disconnected",
    )


def _make_mop1():
    def value(x):
        return np.array([x[0] ** 2, (x[0] - 2.0) ** 2])

    def jac(x):
        return np.array([[2.0 * x[0]], [2.0 * (x[0] - 2.0)]])

    return Problem(
        "MOP1", 1, 2, BoxRegion.unbounded(1), value, jac,
        sampling_region=BoxRegion.cube(-2, 4, 1), geometry="convex",
    )


def _make_mop3():
    # Poloni's problem, minimization form.
    a1 = 0.5 * np.sin(1.0) - 2.0 * np.cos(1.0) + np.sin(2.0) - 1.5 * np.cos(2.0)
    a2 = 1.5 * np.sin(1.0) - np.cos(1.0) + 2.0 * np.sin(2.0) - 0.5 * np.cos(2.0)

    def parts(x):
        b1 = 0.5 * np.sin(x[0]) - 2.0 * np.cos(x[0]) + np.sin(x[1]) - 1.5 * np.cos(x[1])
        b2 = 1.5 * np.sin(x[0]) - np.cos(x[0]) + 2.0 * np.sin(x[1]) - 0.5 * np.cos(x[1])
        db1 = np.array([0.5 * np.cos(x[0]) + 2.0 * np.sin(x[0]), np.cos(x[1]) + 1.5 * np.sin(x[1])])
        db2 = np.array([1.5 * np.cos(x[0]) + np.sin(x[0]), 2.0 * np.cos(x[1]) + 0.5 * np.sin(x[1])])
        return b1, b2, db1, db2

    def value(x):
        b1, b2, _, _ = parts(x)
        return np.array([
            1.0 + (a1 - b1) ** 2 + (a2 - b2) ** 2,
            (x[0] + 3.0) ** 2 + (x[1] + 1.0) ** 2,
        ])

    def jac(x):
        b1, b2, db1, db2 = parts(x)
        return np.vstack([
            -2.0 * (a1 - b1) * db1 - 2.0 * (a2 - b2) * db2,
            np.array([2.0 * (x[0] + 3.0), 2.0 * (x[1] + 1.0)]),
        ])

    return Problem("MOP3", 2, 2, BoxRegion.cube(-np.pi, np.pi, 2), value, jac,
                   geometry="disconnected")


def _make_deb41():
    # f2 has a pole at x1 = 0; the oracle floors x1 at 1e-9 so value and
    # gradient stay finite on the closed box.
    eps = 1e-9

    def gpart(x2):
        e1 = np.exp(-(((x2 - 0.2) / 0.004) ** 2))
        e2 = 0.8 * np.exp(-(((x2 - 0.6) / 0.4) ** 2))
        g = 2.0 - e1 - e2
        dg = e1 * 2.0 * (x2 - 0.2) / 0.004 ** 2 + e2 * 2.0 * (x2 - 0.6) / 0.4 ** 2
        return g, dg

    def value(x):
        g, _ = gpart(x[1])
        return np.array([x[0], g / max(x[0], eps)])

    def jac(x):
        g, dg = gpart(x[1])
        x1 = max(x[0], eps)
        return np.array([[1.0, 0.0], [-g / x1 ** 2, dg / x1]])

    return Problem("DEB41", 2, 2, BoxRegion.cube(0, 1, 2), value, jac, geometry="convex")


_BUILDERS: dict[str, Callable[[], Problem]] = {
    "ZDT1": _make_zdt1,
    "ZDT2": _make_zdt2,
    "ZDT3": _make_zdt3,
    "JOS2": _make_jos2,
    "SP1": _make_sp1,
    "IM1": _make_im1,
    "FF1": _make_ff1,
    "Far1": _make_far1,
    "SK1": _make_sk1,
    "MOP1": _make_mop1,
    "MOP2": _make_mop2,
    "MOP3": _make_mop3,
    "DEB41": _make_deb41,
}


def problem_names() -> list[str]:
    return list(_BUILDERS)


def make_synthetic(name: str) -> Problem:
    """Build a registered benchmark by name."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; available: {', '.join(_BUILDERS)}"
        ) from None
    return builder()


def list_problems() -> list[dict]:
    """Metadata for every registered benchmark (name, n, m, bounds, geometry)."""
    infos = []
    for name in _BUILDERS:
        p = make_synthetic(name)
        if p.region.is_bounded:
            lo, up = p.region.lower, p.region.upper
            bounds = ", ".join(f"[{l:g}, {u:g}]" for l, u in zip(lo, up)) \
                if (lo != lo[0]).any() or (up != up[0]).any() \
                else f"[{lo[0]:g}, {up[0]:g}]"
        else:
            bounds = "none"
        infos.append({"name": name, "n": p.n, "m": p.m, "bounds": bounds,
                      "geometry": p.geometry})
    return infos


# ---------------------------------------------------------------------------
# Stochastic wrappers and analytic instances
# ---------------------------------------------------------------------------

def with_variable_noise(problem: Problem, half_widths=None,
                        default_fraction: float = 0.05) -> Problem:
    """Make gradients stochastic by perturbing the evaluation point.

    The batch-b stochastic gradient of objective i at x is the mean of the
    true gradient over b points x + w, with w uniform on the product of
    intervals [-h_j, h_j]. For bounded coordinates the default half-width is
    1/20 of the bound interval (interval length one tenth of the box side);
    for unbounded coordinates it is ``default_fraction * (1 + |x_j|)``.
    Passing ``half_widths`` fixes the widths explicitly. Perturbed points are
    projected into the feasible region so oracles are only queried in-domain.
    Gradients for the m objectives are drawn from the given rng in objective
    order.
    """
    if problem.jacobian_fn is None:
        raise ValueError("variable noise needs a problem with true gradients")
    if not 0.0 < default_fraction <= 1.0:
        raise ValueError("default_fraction must lie in (0, 1]")

    fixed = None
    if half_widths is not None:
        fixed = as_vector(half_widths, "half_widths")
        if fixed.size != problem.n:
            raise ValueError("half_widths dimension must match the problem")
        if (fixed < 0).any():
            raise ValueError("half_widths must be nonnegative")
    else:
        bounded = np.isfinite(problem.region.lower) & np.isfinite(problem.region.upper)
        span = np.where(bounded, problem.region.upper - problem.region.lower, 0.0)

    region = problem.region

    def widths_at(x):
        if fixed is not None:
            return fixed
        return np.where(bounded, span / 20.0, default_fraction * (1.0 + np.abs(x)))

    def stochastic(x, batches, rng):
        h = widths_at(x)
        out = np.empty((problem.m, problem.n))
        for i in range(problem.m):
            w = rng.uniform(-h, h, size=(int(batches[i]), problem.n))
            pts = project_box(x + w, region)
            rows = np.empty((pts.shape[0], problem.n))
            for r, pt in enumerate(pts):
                rows[r] = problem.gradient(pt)[i]
            out[i] = rows.mean(axis=0)
        return out

    return Problem(
        name=problem.name,
        n=problem.n,
        m=problem.m,
        region=problem.region,
        value_fn=problem.value_fn,
        jacobian_fn=problem.jacobian_fn,
        stochastic_fn=stochastic,
        sampling_region=problem.sampling_region,
        geometry=problem.geometry,
    )


def make_quadratic_pair(c1: float, c2: float, centers, noise_sigma: float = 0.0,
                        name: str = "quadratic-pair") -> Problem:
    """Two strongly convex quadratics ``f_i(x) = (c_i / 2) ||x - a_i||^2``.

    Stochastic gradients add per-coordinate Gaussian noise of standard
    deviation ``noise_sigma / sqrt(batch)`` to the true gradient, one
    objective at a time in objective order. The Pareto set is the segment
    between the two centers (for c1 = c2); the weighted-sum minimizer for
    weights (w, 1-w) is ``(w c1 a1 + (1-w) c2 a2) / (w c1 + (1-w) c2)``.
    """
    if c1 <= 0 or c2 <= 0:
        raise ValueError("curvatures must be positive")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be nonnegative")
    a1 = as_vector(centers[0], "center 1")
    a2 = as_vector(centers[1], "center 2")
    if a1.shape != a2.shape:
        raise ValueError("centers must have equal dimension")
    n = a1.size
    cs = (float(c1), float(c2))
    ctrs = (a1, a2)

    def value(x):
        return np.array([0.5 * cs[i] * np.sum((x - ctrs[i]) ** 2) for i in range(2)])

    def jac(x):
        return np.vstack([cs[i] * (x - ctrs[i]) for i in range(2)])

    def stochastic(x, batches, rng):
        out = jac(x)
        if noise_sigma > 0:
            for i in range(2):
                out[i] = out[i] + rng.normal(0.0, noise_sigma / np.sqrt(batches[i]), size=n)
        return out

    lo = np.minimum(a1, a2) - 2.0
    up = np.maximum(a1, a2) + 2.0
    return Problem(name, n, 2, BoxRegion.unbounded(n), value, jac,
                   stochastic_fn=stochastic if noise_sigma > 0 else None,
                   sampling_region=BoxRegion(lo, up), geometry="convex")


# Default mean vectors for the finite-population bias demonstration.
BIAS_DEMO_MEANS = (
    np.array([-31.22, -26.57, -17.20, 18.77]),
    np.array([-7.50, 15.62, -16.69, 15.31]),
)


def make_gaussian_population_pair(mean1=None, mean2=None, pop_size: int = 3000,
                                  cov_scale: float = 0.2, seed: int = 0) -> Problem:
    """Two linear objectives whose gradients are finite Gaussian populations.

    Each objective i owns a fixed population of ``pop_size`` gradient vectors
    drawn once from N(mean_i, cov_scale * I). The true gradient is the
    population mean (constant in x, objectives are linear); the batch-b
    stochastic gradient is the mean of b population members sampled uniformly
    without replacement, so the full batch reproduces the true gradient.
    """
    m1 = as_vector(BIAS_DEMO_MEANS[0] if mean1 is None else mean1, "mean1")
    m2 = as_vector(BIAS_DEMO_MEANS[1] if mean2 is None else mean2, "mean2")
    if m1.shape != m2.shape:
        raise ValueError("means must have equal dimension")
    if pop_size < 1:
        raise ValueError("pop_size must be >= 1")
    if cov_scale < 0:
        raise ValueError("cov_scale must be nonnegative")
    n = m1.size
    rng = np.random.default_rng(seed)
    pops = [rng.normal(mu, np.sqrt(cov_scale), size=(pop_size, n)) for mu in (m1, m2)]
    means = [pop.mean(axis=0) for pop in pops]

    def value(x):
        return np.array([means[0] @ x, means[1] @ x])

    def jac(x):
        return np.vstack(means)

    def stochastic(x, batches, rng_):
        out = np.empty((2, n))
        for i in range(2):
            b = int(batches[i])
            if b > pop_size:
                raise ValueError(f"batch {b} exceeds population size {pop_size}")
            idx = rng_.choice(pop_size, size=b, replace=False)
            out[i] = pops[i][idx].mean(axis=0)
        return out

    prob = Problem("gaussian-population-pair", n, 2, BoxRegion.unbounded(n), value, jac,
                   stochastic_fn=stochastic, sampling_region=BoxRegion.cube(-1, 1, n))
    prob.population_size = pop_size
    return prob
