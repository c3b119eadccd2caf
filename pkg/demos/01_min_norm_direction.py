# The common descent direction for several objectives is the minimum-norm
# point of the convex hull of their gradients: its negation decreases every
# objective at once, and it vanishes exactly at Pareto-stationary points.

import numpy as np

from smgpareto import is_pareto_stationary, solve_min_norm, solve_min_norm_pair

print("Two orthogonal gradients pull equally:")
mg = solve_min_norm([[1.0, 0.0], [0.0, 1.0]])
print(f"  weights {mg.weights}, direction {mg.direction}, norm {mg.norm:.6f}")

print("\nA longer gradient gets less weight (norm balancing):")
mg = solve_min_norm([[2.0, 0.0], [0.0, 1.0]])
print(f"  weights {mg.weights}, direction {mg.direction}")

print("\nOpposing gradients certify Pareto stationarity:")
mg = solve_min_norm([[1.0, 0.0], [-1.0, 0.0]])
print(f"  norm {mg.norm:.2e}  ->  stationary: {is_pareto_stationary([[1, 0], [-1, 0]])}")

print("\nThe two-gradient closed form agrees with the iterative solver:")
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    g1, g2 = rng.normal(0, 3, size=(2, 5))
    worst = max(worst, abs(solve_min_norm_pair(g1, g2).norm
                           - solve_min_norm([g1, g2]).norm))
print(f"  largest norm discrepancy over 200 random pairs: {worst:.2e}")

print("\nThree gradients in the plane, origin inside their hull:")
G = np.array([[1.0, 0.0], [-0.5, 1.0], [-0.5, -1.0]])
mg = solve_min_norm(G)
print(f"  weights {np.round(mg.weights, 6)}, norm {mg.norm:.2e} (stationary)")
