# Comparing front approximations: Purity (fraction surviving in the pooled
# nondominated reference), the largest hole along any axis, and the spread
# score (how uneven the gaps are). Lower hole/spread = better distributed.

import numpy as np

from smgpareto import compare_fronts, performance_profile

rng = np.random.default_rng(3)

# "solver A": dense, slightly noisy samples of the unit front f2 = 1 - f1
t = np.sort(rng.uniform(0, 1, 60))
A = np.column_stack([t, 1 - t + rng.normal(0, 0.003, t.size)])

# "solver B": sparse but exact samples, clustered to the left
t = np.sort(rng.uniform(0, 0.6, 12) ** 1.5)
B = np.column_stack([t, 1 - t])

result = compare_fronts({"dense-noisy": A, "sparse-exact": B})
print(f"{'front':<14} {'purity':>7} {'max hole':>9} {'spread':>7}")
for name, m in result.items():
    print(f"{name:<14} {m.purity:>7.3f} {m.gamma:>9.4f} {m.delta:>7.4f}")

print("\nperformance profiles over a toy 2-solver / 4-problem hole table:")
values = np.array([[0.05, 0.30, 0.12, 0.40],    # solver 1
                   [0.10, 0.20, 0.12, 0.80]])   # solver 2
taus, rho = performance_profile(values, higher_is_better=False)
print(f"{'tau':>6} {'solver1':>8} {'solver2':>8}")
for i, tau in enumerate(taus):
    print(f"{tau:>6.2f} {rho[0, i]:>8.2f} {rho[1, i]:>8.2f}")
print("reading: rho(1) = share of problems a solver wins; the curve's")
print("height at large tau = share of problems solved within that factor")
