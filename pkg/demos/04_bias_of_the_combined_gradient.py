# Combining unbiased per-objective gradient estimates through the min-norm
# subproblem produces a *biased* estimate of the weighted true gradient:
# the weights adapt to the same noise they are combined with. The bias
# shrinks as the batch grows and vanishes at the full finite-sum batch.

import numpy as np

from smgpareto import make_gaussian_population_pair, measure_bias

problem = make_gaussian_population_pair(seed=7)  # two populations of 3000 gradients
x = np.zeros(problem.n)
batches = [10, 50, 200, 1000, 3000]
reps = 3000

rng = np.random.default_rng(1)
est = measure_bias(problem, x, batches, reps, rng, weight_mode="estimated")
true = measure_bias(problem, x, batches, reps, rng, weight_mode="true")

print(f"bias of the combined gradient over {reps} sampled batches\n")
print(f"{'batch':>6}  {'vs weights of the sample':>26}  {'vs full-information weights':>28}")
for (b, be, se_e), (_, bt, se_t) in zip(est, true):
    print(f"{b:>6}  {be:>14.3e} (se {se_e:.0e})  {bt:>16.3e} (se {se_t:.0e})")

print("\nper-objective estimates stay unbiased at any batch size; only the")
print("min-norm combination is biased, and the full batch removes it exactly")
