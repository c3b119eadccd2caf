# Approximate the whole Pareto front of ZDT1 (30 variables, noisy gradients)
# by maintaining a nondominated list: perturb the endpoints of the largest
# front holes, run short stochastic multi-gradient bursts from every list
# point, and drop dominated points.

from pathlib import Path

import numpy as np

from smgpareto import PfConfig, StepSchedule, make_synthetic, run_pf, with_variable_noise
from smgpareto.io import write_front_csv, write_points_csv

problem = with_variable_noise(make_synthetic("ZDT1"))
cfg = PfConfig(start_count=30, r=5, p=2, q=2, max_outer_iters=300,
               max_list_size=500, schedule=StepSchedule.halving(0.3, 200),
               seed=0, batch=1)
archive, stats = run_pf(problem, cfg, mode="smg")
print(f"terminated after {stats.outer_iters} outer iterations with "
      f"{stats.list_size} nondominated points ({stats.wall_time_seconds:.1f}s)")

# the analytic front is f2 = 1 - sqrt(f1); report the approximation error
t = np.linspace(0, 1, 20001)
curve = np.column_stack([t, 1 - np.sqrt(t)])
dists = np.array([np.min(np.linalg.norm(curve - f, axis=1)) for f in archive.values])
print(f"distance to the analytic front: median {np.median(dists):.2e}, "
      f"90th percentile {np.percentile(dists, 90):.2e}, max {dists.max():.3f}")

out = Path(__file__).parent / "output"
write_front_csv(out / "zdt1_front.csv", archive.values)
write_points_csv(out / "zdt1_points.csv", archive.points)
print(f"front written to {out / 'zdt1_front.csv'}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(curve[:, 0], curve[:, 1], "k-", lw=1, label="analytic front")
    ax.plot(archive.values[:, 0], archive.values[:, 1], ".", ms=3, label="archive")
    ax.set_xlabel("$f_1$")
    ax.set_ylabel("$f_2$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "zdt1_front.png", dpi=150)
    print(f"plot written to {out / 'zdt1_front.png'}")
except ImportError:
    print("matplotlib not available, skipping the plot")
