"""Stochastic multi-gradient descent and Pareto-front approximation."""

from .core import BoxRegion, dominates, project_box, weakly_dominates
from .front import (ArchiveEntry, ParetoArchive, PfConfig, PfStats,
                    filter_nondominated, largest_holes, nondominated_mask,
                    perturb_points, run_pf, weakly_nondominated_mask)
from .logreg import (Dataset, GroupSplit, LinearModel, ParseError, accuracy,
                     group_objective_gradient, group_objective_value,
                     make_fairness_problem, make_group_problem, parse_libsvm,
                     serialize_libsvm, split_by_feature)
from .metrics import (FrontMetrics, build_reference, compare_fronts, delta_spread,
                      extreme_points, gamma_spread, performance_profile, purity)
from .problems import (Problem, list_problems, make_gaussian_population_pair,
                       make_quadratic_pair, make_synthetic, problem_names,
                       with_variable_noise)
from .simplex import (MultiGradient, is_pareto_stationary, project_simplex,
                      solve_min_norm, solve_min_norm_pair)
from .solver import (BatchPolicy, SmgConfig, SmgTrace, StepSchedule,
                     dynamic_batch_size, measure_bias, run_smg, smg_step, step_size)

__version__ = "0.1.0"
