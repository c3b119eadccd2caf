# Fairness as multi-objective optimization: split a binary classification
# set into two groups on a binary feature, give each group its own
# regularized logistic loss, and trace the Pareto front between them.
# Each front point is a classifier with a different group-accuracy trade-off.

import numpy as np

from smgpareto import (LinearModel, PfConfig, SmgConfig, StepSchedule, accuracy,
                       make_fairness_problem, make_group_problem, parse_libsvm,
                       run_pf, run_smg, split_by_feature)

# synthetic two-group data whose groups prefer conflicting hyperplanes,
# so no single classifier can serve both at once
rng = np.random.default_rng(11)
lines = []
for _ in range(400):
    group = int(rng.integers(0, 2))
    a = rng.normal(0, 1, size=3)
    if group == 0:
        z = 1.5 * a[0] - 1.0 * a[1] + 0.35 * rng.normal()
    else:
        z = -0.4 * a[0] + 1.5 * a[1] + 0.35 * rng.normal()
    y = 1 if z >= 0 else -1
    lines.append(f"{y} 1:{group} 2:{a[0]:.6f} 3:{a[1]:.6f} 4:{a[2]:.6f}")
data = parse_libsvm("\n".join(lines))
split = split_by_feature(data, 1)
print(f"{len(data)} rows, groups of {split.group1.size} and {split.group2.size}")

# baseline: one stochastic-gradient model for everyone
base = make_group_problem(data, np.arange(len(data)), reg=1e-3)
trace = run_smg(np.zeros(base.n), base,
                SmgConfig(max_iters=1000, schedule=StepSchedule.halving(0.1, 200),
                          batch=1, seed=0))
model = LinearModel.from_flat(trace.final_x)
print("\nsingle model for the pooled data:")
print(f"  overall {accuracy(model, data, np.arange(len(data))):.1%}   "
      f"group 1 {accuracy(model, data, split.group1):.1%}   "
      f"group 2 {accuracy(model, data, split.group2):.1%}")

# the two-objective front: group losses against each other
problem = make_fairness_problem(data, split, 1e-3, 1e-3)
cfg = PfConfig(start_count=20, r=5, p=2, q=2, max_outer_iters=60,
               max_list_size=400, schedule=StepSchedule.halving(0.1, 200),
               seed=0, batch=1)
archive, stats = run_pf(problem, cfg, mode="smg")
print(f"\nfront of {len(archive)} classifiers "
      f"({stats.outer_iters} outer iterations)")

order = np.argsort(archive.values[:, 0])
sel = order[np.linspace(0, len(order) - 1, 5).round().astype(int)]
print("\nfive representative trade-offs (quantiles along the group-1 loss):")
print(f"{'loss1':>8} {'loss2':>8} {'acc group1':>11} {'acc group2':>11}")
for i in sel:
    m = LinearModel.from_flat(archive.points[i])
    print(f"{archive.values[i, 0]:>8.4f} {archive.values[i, 1]:>8.4f} "
          f"{accuracy(m, data, split.group1):>11.1%} "
          f"{accuracy(m, data, split.group2):>11.1%}")
print("\npicking a point = choosing how much group-2 accuracy to trade")
print("for group-1 accuracy; the single pooled model is one such point")
