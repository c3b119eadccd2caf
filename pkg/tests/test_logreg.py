import numpy as np
import pytest

from smgpareto.logreg import (Dataset, LinearModel, ParseError, accuracy,
                              group_objective_gradient, group_objective_value,
                              make_fairness_problem, make_group_problem, parse_libsvm,
                              serialize_libsvm, split_by_feature)

SAMPLE = """+1 1:0.5 3:2
-1
1 2:-1.5 4:0.25
-1 1:1 2:1
"""


def synthetic_dataset(n_rows=120, seed=0):
    """Two groups split on feature 1, linearly separable-ish labels."""
    rng = np.random.default_rng(seed)
    lines = []
    for _ in range(n_rows):
        group = int(rng.integers(0, 2))
        a = rng.normal(0, 1, size=3)
        z = 1.2 * a[0] - 0.7 * a[1] + (0.5 if group else -0.3) + 0.4 * rng.normal()
        y = 1 if z >= 0 else -1
        feats = [f"1:{group}", f"2:{a[0]:.6f}", f"3:{a[1]:.6f}", f"4:{a[2]:.6f}"]
        lines.append(f"{y} " + " ".join(feats))
    return parse_libsvm("\n".join(lines))


def test_parse_examples():
    d = parse_libsvm(SAMPLE)
    assert len(d) == 4
    assert d.labels.tolist() == [1.0, -1.0, 1.0, -1.0]
    assert d.rows[0] == ((0, 0.5), (2, 2.0))
    assert d.rows[1] == ()
    assert d.feature_dim == 4
    assert d.dense()[0, 0] == 0.5 and d.dense()[0, 2] == 2.0


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_libsvm("1 2:a\n")
    assert err.value.line == 1

    with pytest.raises(ParseError) as err:
        parse_libsvm("+1 1:1\n-1 3:1 2:1\n")
    assert err.value.line == 2

    with pytest.raises(ParseError):
        parse_libsvm("+1 0:1\n")
    with pytest.raises(ParseError):
        parse_libsvm("abc 1:1\n")


def test_parse_label_mapping():
    d = parse_libsvm("0 1:1\n1 1:2\n")
    assert d.labels.tolist() == [-1.0, 1.0]
    d = parse_libsvm("1 1:1\n2 1:2\n")
    assert d.labels.tolist() == [-1.0, 1.0]
    with pytest.raises(ParseError):
        parse_libsvm("1 1:1\n2 1:2\n3 1:3\n")


def test_parse_serialize_round_trip():
    d = parse_libsvm(SAMPLE)
    text = serialize_libsvm(d)
    d2 = parse_libsvm(text)
    assert d == d2
    assert parse_libsvm(serialize_libsvm(d2)) == d2


def test_split_by_feature():
    d = synthetic_dataset()
    split = split_by_feature(d, 1)
    assert split.group1.size + split.group2.size == len(d)
    assert split.group1.size > 0 and split.group2.size > 0
    assert set(split.group1) & set(split.group2) == set()
    assert split.values == (0.0, 1.0)

    with pytest.raises(ValueError):
        split_by_feature(d, 2)  # continuous feature
    with pytest.raises(ValueError):
        split_by_feature(d, 99)

    uniform = parse_libsvm("+1 1:1\n-1 1:1\n")
    with pytest.raises(ValueError):
        split_by_feature(uniform, 1)


def test_objective_value_zero_model_is_log2():
    d = synthetic_dataset()
    J = np.arange(len(d))
    model = LinearModel.zeros(d.feature_dim)
    assert abs(group_objective_value(model, d, J, reg=0.0) - np.log(2)) < 1e-12


def test_objective_value_large_margin_stable():
    d = parse_libsvm("+1 1:1\n")
    model = LinearModel(np.zeros(1), 1e6)  # huge intercept, loss -> 0
    v = group_objective_value(model, d, [0], reg=0.0)
    assert 0.0 <= v < 1e-12
    v = group_objective_value(model, d, [0], reg=1e-3)
    assert abs(v - 0.0) < 1e-12  # intercept is not regularized


def test_gradient_single_row_example():
    d = parse_libsvm("+1 1:1\n")
    model = LinearModel.zeros(1)
    g = group_objective_gradient(model, d, [0], reg=0.0)
    assert np.allclose(g, [-0.5, -0.5])


def test_gradient_matches_finite_differences():
    d = synthetic_dataset()
    split = split_by_feature(d, 1)
    rng = np.random.default_rng(3)
    for J in (split.group1, split.group2):
        for _ in range(20):
            v = rng.normal(0, 1, size=d.feature_dim + 1)
            model = LinearModel.from_flat(v)
            g = group_objective_gradient(model, d, J, reg=1e-3)
            fd = np.zeros_like(g)
            h = 1e-6 * (1 + np.linalg.norm(v))
            for j in range(v.size):
                e = np.zeros(v.size)
                e[j] = h
                fp = group_objective_value(LinearModel.from_flat(v + e), d, J, 1e-3)
                fm = group_objective_value(LinearModel.from_flat(v - e), d, J, 1e-3)
                fd[j] = (fp - fm) / (2 * h)
            assert np.linalg.norm(g - fd) <= 1e-5 * (1 + np.linalg.norm(fd))


def test_objective_convexity_probe():
    d = synthetic_dataset()
    J = np.arange(len(d))
    rng = np.random.default_rng(5)
    for _ in range(50):
        u = rng.normal(0, 2, size=d.feature_dim + 1)
        v = rng.normal(0, 2, size=d.feature_dim + 1)
        t = rng.uniform(0.05, 0.95)
        mid = LinearModel.from_flat(t * u + (1 - t) * v)
        lhs = group_objective_value(mid, d, J, reg=1e-3)
        rhs = (t * group_objective_value(LinearModel.from_flat(u), d, J, 1e-3)
               + (1 - t) * group_objective_value(LinearModel.from_flat(v), d, J, 1e-3))
        assert lhs <= rhs + 1e-9


def test_minibatch_gradient_unbiased():
    d = synthetic_dataset(n_rows=40)
    J = np.arange(len(d))
    model = LinearModel.from_flat(np.random.default_rng(7).normal(0, 0.5, d.feature_dim + 1))
    full = group_objective_gradient(model, d, J, reg=1e-3)
    rng = np.random.default_rng(8)
    reps = 10**5
    acc = np.zeros_like(full)
    sq = np.zeros_like(full)
    for _ in range(reps):
        g = group_objective_gradient(model, d, J, reg=1e-3, batch=1, rng=rng)
        acc += g
        sq += g * g
    mean = acc / reps
    se = np.sqrt(np.maximum(sq / reps - mean**2, 0) / reps)
    assert (np.abs(mean - full) <= 5 * se + 1e-12).all()


def test_gradient_validation():
    d = synthetic_dataset()
    model = LinearModel.zeros(d.feature_dim)
    with pytest.raises(ValueError):
        group_objective_gradient(model, d, [], reg=0.0)
    with pytest.raises(ValueError):
        group_objective_gradient(model, d, [0, 1], reg=0.0, batch=0,
                                 rng=np.random.default_rng(0))
    with pytest.raises(ValueError):
        group_objective_gradient(model, d, [0, 1], reg=0.0, batch=3,
                                 rng=np.random.default_rng(0))
    with pytest.raises(ValueError):
        group_objective_value(model, d, [0], reg=-1.0)


def test_accuracy_rules():
    d = parse_libsvm("+1 1:1\n-1 1:-1\n+1 1:2\n")
    J = [0, 1, 2]
    perfect = LinearModel(np.array([1.0]), 0.0)
    assert accuracy(perfect, d, J) == 1.0
    zero = LinearModel.zeros(1)
    # zero model predicts +1 everywhere (boundary counts as +1)
    assert accuracy(zero, d, J) == pytest.approx(2 / 3)


def test_fairness_problem_surface():
    d = synthetic_dataset()
    split = split_by_feature(d, 1)
    p = make_fairness_problem(d, split, 0.0, 0.0)
    assert p.n == d.feature_dim + 1 and p.m == 2
    assert not p.region.is_bounded
    v = p.value(np.zeros(p.n))
    assert np.allclose(v, np.log(2))
    G = p.gradient(np.zeros(p.n))
    assert G.shape == (2, p.n)
    rng = np.random.default_rng(0)
    Gs = p.stochastic_gradient(np.zeros(p.n), 5, rng)
    assert Gs.shape == (2, p.n)


def test_group_problem_is_single_objective():
    d = synthetic_dataset()
    p = make_group_problem(d, np.arange(len(d)), reg=1e-3)
    assert p.m == 1
    full = p.stochastic_gradient(np.zeros(p.n), len(d), np.random.default_rng(0))
    assert np.allclose(full[0], p.gradient(np.zeros(p.n))[0])


def test_fairness_front_end_to_end_synthetic():
    # small driver run on synthetic data: front exists and trades the groups
    from smgpareto.front import PfConfig, run_pf
    from smgpareto.solver import StepSchedule

    d = synthetic_dataset(n_rows=80, seed=2)
    split = split_by_feature(d, 1)
    p = make_fairness_problem(d, split)
    cfg = PfConfig(start_count=10, r=3, p=2, q=2, max_outer_iters=25,
                   max_list_size=200, schedule=StepSchedule.halving(0.1, 200), seed=0)
    archive, stats = run_pf(p, cfg, mode="smg")
    assert len(archive) >= 10
    f = archive.values
    # a genuine trade-off: spread in both objectives, negatively associated
    assert f[:, 0].max() - f[:, 0].min() > 1e-4
    corr = np.corrcoef(f[:, 0], f[:, 1])[0, 1]
    assert corr < 0.0


def test_full_batch_smg_front_coincides_with_mg():
    # with batches covering both groups the gradient estimator is exact, so
    # the stochastic driver reproduces the deterministic one bit for bit
    # (restarts collapse to duplicates and are deduplicated)
    from smgpareto.front import PfConfig, run_pf
    from smgpareto.solver import StepSchedule

    d = synthetic_dataset(n_rows=50, seed=9)
    split = split_by_feature(d, 1)
    p = make_fairness_problem(d, split)
    base = dict(start_count=8, r=3, q=2, max_outer_iters=6, max_list_size=60,
                schedule=StepSchedule.halving(0.1, 200), seed=13,
                batch=len(d))
    a_smg, _ = run_pf(p, PfConfig(**base, p=2), mode="smg")
    a_mg, _ = run_pf(p, PfConfig(**base, p=1), mode="mg")
    assert np.array_equal(a_smg.points, a_mg.points)
    assert np.array_equal(a_smg.values, a_mg.values)
