import numpy as np
import pytest

from smgpareto.metrics import (build_reference, compare_fronts, delta_spread,
                               extreme_points, gamma_spread, performance_profile, purity)


def test_build_reference_examples():
    ref = build_reference([np.array([[1.0, 2.0]]), np.array([[2.0, 1.0]])])
    assert sorted(map(tuple, ref)) == [(1.0, 2.0), (2.0, 1.0)]

    ref = build_reference([np.array([[1.0, 1.0]]), np.array([[2.0, 2.0]])])
    assert list(map(tuple, ref)) == [(1.0, 1.0)]

    front = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.array_equal(build_reference([front]), front)

    assert build_reference([]).size == 0


def test_purity_examples():
    ref = np.array([[1.0, 1.0], [2.0, 0.0]])
    assert purity(np.array([[1.0, 1.0]]), ref) == 1.0
    assert purity(np.array([[1.0, 1.0], [3.0, 3.0]]), ref) == 0.5
    assert purity(np.array([[9.0, 9.0]]), ref) == 0.0
    with pytest.raises(ValueError):
        purity(np.empty((0, 2)), ref)


def test_purity_tolerance():
    ref = np.array([[1.0, 1.0]])
    assert purity(np.array([[1.0 + 5e-10, 1.0]]), ref, tol=1e-9) == 1.0
    assert purity(np.array([[1.0 + 5e-8, 1.0]]), ref, tol=1e-9) == 0.0


def test_purity_of_front_against_itself():
    rng = np.random.default_rng(0)
    from smgpareto.front import nondominated_mask
    F = rng.normal(size=(40, 2))
    F = F[nondominated_mask(F)]
    assert purity(F, build_reference([F])) == 1.0


def test_extreme_points_examples():
    ref = np.array([[0.0, 2.0], [1.0, 0.0]])
    ext = extreme_points(ref)
    # ranges (1, 2): axis 2 wins; extremes ordered (argmin f2, argmax f2)
    assert np.array_equal(ext, np.array([[1.0, 0.0], [0.0, 2.0]]))

    # equal ranges: lowest axis index wins
    ref = np.array([[0.0, 0.0], [1.0, 1.0]])
    ext = extreme_points(ref)
    assert np.array_equal(ext, np.array([[0.0, 0.0], [1.0, 1.0]]))

    with pytest.raises(ValueError):
        extreme_points(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_gamma_spread_worked_example():
    front = np.array([[0.5, 1.0]])
    extremes = np.array([[0.0, 2.0], [2.0, 0.0]])
    # axis 1 sorted {0, 0.5, 2}: gaps {0.5, 1.5}; axis 2 sorted {0, 1, 2}: gaps {1, 1}
    assert abs(gamma_spread(front, extremes) - 1.5) < 1e-12


def test_gamma_extremes_only():
    extremes = np.array([[0.0, 2.0], [2.0, 0.0]])
    assert abs(gamma_spread(np.empty((0, 2)), extremes) - 2.0) < 1e-12
    # front point equal to an extreme is dropped before gap computation
    assert abs(gamma_spread(np.array([[0.0, 2.0]]), extremes) - 2.0) < 1e-12


def test_gamma_evenly_spaced():
    pts = np.linspace(0, 1, 6)
    front = np.column_stack([pts[1:-1], 1 - pts[1:-1]])
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert abs(gamma_spread(front, extremes) - 0.2) < 1e-12


def test_delta_spread_equally_spaced_m3():
    front = np.array([[0.25, 0.75], [0.5, 0.5], [0.75, 0.25]])
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert abs(delta_spread(front, extremes) - 0.5) < 1e-12


def test_delta_spread_m2_formula():
    # M=2: one interior gap, numerator d0 + dM, denominator d0 + dM + d1
    front = np.array([[0.1, 0.0], [0.7, 0.0]])
    extremes = np.array([[0.0, 0.0], [1.0, 0.0]])
    d0, d1, dM = 0.1, 0.6, 0.3
    expected = (d0 + dM) / (d0 + dM + d1)
    # second axis is degenerate (all zero): restrict to axis 1 by spreading axis 2
    front2 = np.array([[0.1, 0.9], [0.7, 0.3]])
    extremes2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    # axis 2 mirrors axis 1, same score by symmetry of the gap sets
    assert abs(delta_spread(front2, extremes2) - expected) < 1e-12


def test_delta_spread_m1_degenerates_to_one():
    front = np.array([[0.4, 0.6]])
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert abs(delta_spread(front, extremes) - 1.0) < 1e-12


def test_delta_spread_errors():
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        delta_spread(np.empty((0, 2)), extremes)
    degenerate = np.array([[0.0, 0.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        delta_spread(np.array([[0.0, 0.0]]), degenerate)


def test_delta_clustered_exceeds_even():
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    even = np.column_stack([np.linspace(0.2, 0.8, 4), 1 - np.linspace(0.2, 0.8, 4)])
    cluster = np.column_stack([np.array([0.01, 0.02, 0.03, 0.04]),
                               1 - np.array([0.01, 0.02, 0.03, 0.04])])
    assert delta_spread(cluster, extremes) > delta_spread(even, extremes)


def test_delta_even_spacing_minimizes_over_interior_rearrangements():
    # with the outermost front points pinned, even interior spacing minimizes
    # the score: the boundary gaps and the interior mean are then fixed and
    # only the deviation sum varies
    rng = np.random.default_rng(1)
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    M = 5
    even = np.linspace(0, 1, M + 2)[1:-1]
    base = delta_spread(np.column_stack([even, 1 - even]), extremes)
    lo, hi = even[0], even[-1]
    for _ in range(1000):
        mid = np.sort(rng.uniform(lo + 1e-6, hi - 1e-6, size=M - 2))
        pts = np.concatenate([[lo], mid, [hi]])
        val = delta_spread(np.column_stack([pts, 1 - pts]), extremes)
        assert val >= base - 1e-12


def test_delta_even_spacing_beats_random_in_bulk():
    # unconstrained random configurations rarely score below even spacing
    # (clustering toward the extremes can, by shrinking the boundary gaps)
    rng = np.random.default_rng(4)
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    M = 5
    even = np.linspace(0, 1, M + 2)[1:-1]
    base = delta_spread(np.column_stack([even, 1 - even]), extremes)
    wins = 0
    for _ in range(1000):
        pts = np.sort(rng.uniform(0.001, 0.999, size=M))
        if delta_spread(np.column_stack([pts, 1 - pts]), extremes) >= base:
            wins += 1
    assert wins >= 900


def test_spread_permutation_invariance():
    rng = np.random.default_rng(2)
    front = rng.uniform(size=(8, 2))
    extremes = np.array([[-0.5, 1.5], [1.5, -0.5]])
    g0 = gamma_spread(front, extremes)
    d0 = delta_spread(front, extremes)
    for _ in range(10):
        perm = rng.permutation(8)
        assert gamma_spread(front[perm], extremes) == g0
        assert delta_spread(front[perm], extremes) == d0


def test_gamma_densification_monotone():
    rng = np.random.default_rng(3)
    extremes = np.array([[0.0, 1.0], [1.0, 0.0]])
    for _ in range(50):
        pts = np.sort(rng.uniform(0.05, 0.95, size=4))
        front = np.column_stack([pts, 1 - pts])
        g_before = gamma_spread(front, extremes)
        # insert a point inside the largest axis-1 gap
        all1 = np.sort(np.concatenate([pts, extremes[:, 0]]))
        j = np.argmax(np.diff(all1))
        mid = (all1[j] + all1[j + 1]) / 2
        denser = np.vstack([front, [mid, 1 - mid]])
        assert gamma_spread(denser, extremes) <= g_before + 1e-12


def test_performance_profile_examples():
    taus, rho = performance_profile(np.array([[1.0, 2.0]]))
    assert rho[0, 0] == 1.0  # single solver: best everywhere

    taus, rho = performance_profile(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert np.allclose(taus, [1.0, 2.0])
    assert np.allclose(rho, [[0.5, 1.0], [0.5, 1.0]])

    # dominating solver reaches 1 at tau = 1
    taus, rho = performance_profile(np.array([[1.0, 1.0], [2.0, 3.0]]))
    assert rho[0, 0] == 1.0 and rho[1, 0] == 0.0


def test_performance_profile_higher_is_better():
    taus, rho = performance_profile(np.array([[1.0, 0.5], [0.5, 1.0]]),
                                    higher_is_better=True)
    assert np.allclose(taus, [1.0, 2.0])
    assert np.allclose(rho, [[0.5, 1.0], [0.5, 1.0]])


def test_performance_profile_validation():
    with pytest.raises(ValueError):
        performance_profile(np.array([[1.0, -2.0]]))
    with pytest.raises(ValueError):
        performance_profile(np.array([[np.inf, 1.0]]))


def test_compare_fronts_shares_extremes():
    a = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
    b = np.array([[0.1, 1.1], [0.6, 0.6]])
    out = compare_fronts({"a": a, "b": b})
    assert out["a"].purity == 1.0
    assert out["b"].purity == 0.0  # b is dominated pointwise by a members
    assert out["a"].gamma <= out["b"].gamma
