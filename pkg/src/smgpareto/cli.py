"""Command line front end.

Subcommands: list-problems, run-smg, run-pf, bias, logreg, metrics, profile.
A JSON config file may supply any long-option value (keys use underscores,
e.g. {"max_outer_iters": 200}); explicit flags override the file. Exit
codes: 0 success, 2 usage/config error, 3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import io as artio
from .front import PfConfig, run_pf
from .logreg import (LinearModel, ParseError, accuracy, make_fairness_problem,
                     make_group_problem, parse_libsvm, split_by_feature)
from .metrics import compare_fronts, performance_profile
from .problems import (BIAS_DEMO_MEANS, list_problems, make_gaussian_population_pair,
                       make_synthetic, with_variable_noise)
from .simplex import solve_min_norm
from .solver import SmgConfig, StepSchedule, measure_bias, run_smg

__all__ = ["main", "build_parser"]

ENV_OUTDIR = "SMGPARETO_OUTDIR"


class NumericError(RuntimeError):
    pass


class UsageError(ValueError):
    pass


class DataError(ValueError):
    pass


def _default_outdir() -> str:
    return os.environ.get(ENV_OUTDIR, ".")


def _schedule_from_args(args) -> StepSchedule:
    kind = args.schedule
    if kind == "constant":
        return StepSchedule.constant(args.alpha0)
    if kind == "strongly-convex":
        return StepSchedule.strongly_convex(args.c_strong)
    if kind == "harmonic":
        return StepSchedule.harmonic(args.gamma)
    if kind == "sqrt":
        return StepSchedule.sqrt(args.alpha0)
    if kind == "halving":
        return StepSchedule.halving(args.alpha0, args.period)
    raise UsageError(f"unknown schedule {kind!r}")


def _load_problem(args):
    try:
        problem = make_synthetic(args.problem)
    except KeyError as exc:
        raise DataError(str(exc)) from None
    if not args.deterministic:
        problem = with_variable_noise(problem, default_fraction=args.noise_fraction)
    return problem


def _check_finite(arr, what: str):
    if not np.isfinite(np.asarray(arr, dtype=float)).all():
        raise NumericError(f"non-finite values in {what}")


def _add_common(sub, schedule_default="halving", alpha0_default=0.3):
    sub.add_argument("--config", help="JSON file with long-option defaults")
    sub.add_argument("--outdir", default=None, help="output directory "
                     f"(default: ${ENV_OUTDIR} or current directory)")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--schedule", default=schedule_default,
                     choices=["constant", "strongly-convex", "harmonic", "sqrt", "halving"])
    sub.add_argument("--alpha0", type=float, default=alpha0_default,
                     help="initial step size (constant/sqrt/halving)")
    sub.add_argument("--period", type=int, default=200, help="halving period")
    sub.add_argument("--c-strong", type=float, default=1.0,
                     help="curvature constant for the strongly-convex schedule")
    sub.add_argument("--gamma", type=float, default=1.0, help="harmonic numerator")
    sub.add_argument("--batch", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smgpareto",
                                     description="stochastic multi-gradient toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    subs.add_parser("list-problems", help="print the benchmark registry")

    smg = subs.add_parser("run-smg", help="single stochastic multi-gradient run")
    _add_common(smg)
    smg.add_argument("--problem", required=True)
    smg.add_argument("--iters", type=int, default=500)
    smg.add_argument("--x0", default=None,
                     help="comma-separated start point (default: sampled)")
    smg.add_argument("--deterministic", action="store_true",
                     help="use true gradients instead of the noise wrapper")
    smg.add_argument("--noise-fraction", type=float, default=0.05)

    pf = subs.add_parser("run-pf", help="Pareto-front driver")
    _add_common(pf)
    pf.add_argument("--problem", required=True)
    pf.add_argument("--mode", default="smg", choices=["smg", "mg"])
    pf.add_argument("--starts", type=int, default=30)
    pf.add_argument("--r", type=int, default=None,
                    help="perturbations per hole endpoint (default 5 smg / 10 mg)")
    pf.add_argument("--p", type=int, default=2, help="restarts per point (smg)")
    pf.add_argument("--q", type=int, default=2, help="steps per restart")
    pf.add_argument("--max-iters", type=int, default=1000)
    pf.add_argument("--max-list", type=int, default=1500)
    pf.add_argument("--threads", type=int, default=1)
    pf.add_argument("--deterministic", action="store_true",
                    help="drop the noise wrapper (mg mode ignores it anyway)")
    pf.add_argument("--noise-fraction", type=float, default=0.05)

    bias = subs.add_parser("bias", help="bias of the combined stochastic gradient")
    bias.add_argument("--config", help="JSON file with long-option defaults")
    bias.add_argument("--outdir", default=None)
    bias.add_argument("--seed", type=int, default=0)
    bias.add_argument("--reps", type=int, default=10000)
    bias.add_argument("--batches", default="10,50,200,1000,3000")
    bias.add_argument("--pop-size", type=int, default=3000)
    bias.add_argument("--cov-scale", type=float, default=0.2)

    lr = subs.add_parser("logreg", help="two-group fair logistic regression front")
    _add_common(lr, alpha0_default=0.1)
    lr.add_argument("--data", required=True, help="LIBSVM file path")
    lr.add_argument("--split-feature", type=int, required=True,
                    help="1-based binary feature to split groups on")
    lr.add_argument("--reg1", type=float, default=1e-3)
    lr.add_argument("--reg2", type=float, default=1e-3)
    lr.add_argument("--starts", type=int, default=30)
    lr.add_argument("--r", type=int, default=5)
    lr.add_argument("--p", type=int, default=2)
    lr.add_argument("--q", type=int, default=2)
    lr.add_argument("--max-iters", type=int, default=1000)
    lr.add_argument("--max-list", type=int, default=1500)
    lr.add_argument("--points", type=int, default=5,
                    help="representative points reported from the front")
    lr.add_argument("--baseline-iters", type=int, default=1000)

    met = subs.add_parser("metrics", help="purity and spread of front CSVs")
    met.add_argument("fronts", nargs="+", help="two or more front.csv files")
    met.add_argument("--tol", type=float, default=1e-9)
    met.add_argument("--outdir", default=None)
    met.add_argument("--config", help="JSON file with long-option defaults")

    prof = subs.add_parser("profile", help="performance profiles from a metrics table")
    prof.add_argument("--input", required=True,
                      help="CSV: problem rows, one column per solver")
    prof.add_argument("--higher-is-better", action="store_true")
    prof.add_argument("--outdir", default=None)
    prof.add_argument("--config", help="JSON file with long-option defaults")

    return parser


def _apply_config(parser, args, argv):
    """Fill unset options from the JSON config; reject unknown keys."""
    if not getattr(args, "config", None):
        return args
    try:
        with open(args.config) as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        raise DataError(f"config file not found: {args.config}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad config JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise UsageError("config must be a JSON object")
    valid = set(vars(args))
    explicit = {a.lstrip("-").replace("-", "_").split("=")[0] for a in argv if a.startswith("--")}
    for key, value in payload.items():
        dest = key.replace("-", "_")
        if dest not in valid:
            raise UsageError(f"unknown config key {key!r}")
        if dest not in explicit:
            setattr(args, dest, value)
    return args


def cmd_list_problems(args) -> int:
    print(f"{'name':<8} {'n':>3} {'m':>3}  {'bounds':<16} geometry")
    for r in list_problems():
        print(f"{r['name']:<8} {r['n']:>3} {r['m']:>3}  {r['bounds']:<16} {r['geometry']}")
    return 0


def cmd_run_smg(args) -> int:
    problem = _load_problem(args)
    schedule = _schedule_from_args(args)
    cfg = SmgConfig(max_iters=args.iters, schedule=schedule, batch=args.batch,
                    seed=args.seed, record_trajectory=False)
    if args.x0 is not None:
        x0 = np.array([float(t) for t in args.x0.split(",")])
    else:
        x0 = problem.sampling_region.sample(np.random.default_rng([args.seed, 9]), 1)[0]
    trace = run_smg(x0, problem, cfg)
    _check_finite(trace.values, "objective values")

    outdir = Path(args.outdir or _default_outdir())
    artio.write_trace_csv(outdir / "trace.csv", trace)
    stationarity = solve_min_norm(problem.gradient(trace.final_x)).norm
    artio.write_json(outdir / "summary.json", {
        "problem": problem.name,
        "iterations": trace.num_steps,
        "final_values": trace.values[-1],
        "final_point": trace.final_x,
        "stationarity_norm": stationarity,
        "seed": args.seed,
    })
    print(f"wrote {outdir / 'trace.csv'} and summary.json "
          f"(final values {trace.values[-1].tolist()})")
    return 0


def cmd_run_pf(args) -> int:
    problem = _load_problem(args) if not (args.mode == "mg" or args.deterministic) \
        else _load_problem_deterministic(args)
    r = args.r if args.r is not None else (10 if args.mode == "mg" else 5)
    cfg = PfConfig(start_count=args.starts, r=r, p=args.p, q=args.q,
                   max_outer_iters=args.max_iters, max_list_size=args.max_list,
                   schedule=_schedule_from_args(args), seed=args.seed,
                   batch=args.batch, threads=args.threads)
    archive, stats = run_pf(problem, cfg, mode=args.mode)
    _check_finite(archive.values, "front values")

    outdir = Path(args.outdir or _default_outdir())
    artio.write_front_csv(outdir / "front.csv", archive.values)
    artio.write_points_csv(outdir / "points.csv", archive.points)
    artio.write_json(outdir / "stats.json", {
        "problem": problem.name, "mode": args.mode,
        "outer_iters": stats.outer_iters, "list_size": stats.list_size,
        "wall_time_seconds": stats.wall_time_seconds, "seed": args.seed,
    })
    print(f"{problem.name} [{args.mode}] front: {stats.list_size} points "
          f"in {stats.outer_iters} outer iterations")
    return 0


def _load_problem_deterministic(args):
    try:
        return make_synthetic(args.problem)
    except KeyError as exc:
        raise DataError(str(exc)) from None


def cmd_bias(args) -> int:
    batches = [int(t) for t in str(args.batches).split(",") if t]
    if not batches:
        raise UsageError("need at least one batch size")
    problem = make_gaussian_population_pair(
        BIAS_DEMO_MEANS[0], BIAS_DEMO_MEANS[1],
        pop_size=args.pop_size, cov_scale=args.cov_scale, seed=args.seed)
    x = np.zeros(problem.n)
    rng = np.random.default_rng([args.seed, 1])
    est = measure_bias(problem, x, batches, args.reps, rng, weight_mode="estimated")
    true = measure_bias(problem, x, batches, args.reps, rng, weight_mode="true")

    outdir = Path(args.outdir or _default_outdir())
    rows = [[str(b), be, se_e, bt, se_t]
            for (b, be, se_e), (_, bt, se_t) in zip(est, true)]
    artio.write_table(outdir / "bias.csv",
                      ["batch", "bias_estimated_weights", "stderr_estimated",
                       "bias_true_weights", "stderr_true"], rows)
    print(f"wrote {outdir / 'bias.csv'} ({len(rows)} batch sizes, {args.reps} reps)")
    return 0


def cmd_logreg(args) -> int:
    path = Path(args.data)
    if not path.exists():
        raise DataError(
            f"dataset not found: {path} (expected LIBSVM text: "
            "'<label> <index>:<value> ...' per line)")
    dataset = parse_libsvm(str(path))
    try:
        split = split_by_feature(dataset, args.split_feature)
    except ValueError as exc:
        raise DataError(str(exc)) from None

    # Whole-group stochastic gradient baseline for reference accuracies.
    all_rows = np.arange(len(dataset))
    base_problem = make_group_problem(dataset, all_rows, args.reg1)
    base_cfg = SmgConfig(max_iters=args.baseline_iters,
                         schedule=StepSchedule.halving(args.alpha0, args.period),
                         batch=args.batch, seed=args.seed)
    base_trace = run_smg(np.zeros(base_problem.n), base_problem, base_cfg)
    base_model = LinearModel.from_flat(base_trace.final_x)

    problem = make_fairness_problem(dataset, split, args.reg1, args.reg2)
    cfg = PfConfig(start_count=args.starts, r=args.r, p=args.p, q=args.q,
                   max_outer_iters=args.max_iters, max_list_size=args.max_list,
                   schedule=_schedule_from_args(args), seed=args.seed, batch=args.batch)
    archive, stats = run_pf(problem, cfg, mode="smg")
    _check_finite(archive.values, "front values")

    # Representative points: evenly spaced quantiles along the first objective.
    order = np.argsort(archive.values[:, 0], kind="stable")
    count = min(args.points, len(archive))
    sel = order[np.unique(np.linspace(0, len(order) - 1, count).round().astype(int))]
    report = []
    for idx in sel:
        model = LinearModel.from_flat(archive.points[idx])
        report.append([
            archive.values[idx, 0], archive.values[idx, 1],
            accuracy(model, dataset, split.group1),
            accuracy(model, dataset, split.group2),
        ])

    outdir = Path(args.outdir or _default_outdir())
    artio.write_front_csv(outdir / "front.csv", archive.values)
    artio.write_table(outdir / "accuracy_report.csv",
                      ["f1", "f2", "acc_group1", "acc_group2"], report)
    artio.write_json(outdir / "stats.json", {
        "data": str(path), "rows": len(dataset),
        "split_feature": split.split_feature,
        "group_sizes": [int(split.group1.size), int(split.group2.size)],
        "outer_iters": stats.outer_iters, "list_size": stats.list_size,
        "wall_time_seconds": stats.wall_time_seconds,
        "baseline_accuracy": {
            "overall": accuracy(base_model, dataset, all_rows),
            "group1": accuracy(base_model, dataset, split.group1),
            "group2": accuracy(base_model, dataset, split.group2),
        },
        "seed": args.seed,
    })
    print(f"front of {stats.list_size} points; accuracy report for {count} "
          f"representative points in {outdir / 'accuracy_report.csv'}")
    return 0


def cmd_metrics(args) -> int:
    if len(args.fronts) < 2:
        raise UsageError("metrics needs at least two front CSV files")
    named = {}
    for fp in args.fronts:
        path = Path(fp)
        if not path.exists():
            raise DataError(f"front file not found: {path}")
        named[path.stem if path.stem not in named else str(path)] = \
            artio.read_front_csv(path)
    try:
        result = compare_fronts(named, tol=args.tol)
    except ValueError as exc:
        raise NumericError(str(exc)) from None
    payload = {
        "purity": {k: v.purity for k, v in result.items()},
        "gamma": {k: v.gamma for k, v in result.items()},
        "delta": {k: v.delta for k, v in result.items()},
    }
    outdir = Path(args.outdir or _default_outdir())
    artio.write_json(outdir / "metrics.json", payload)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_profile(args) -> int:
    path = Path(args.input)
    if not path.exists():
        raise DataError(f"metrics table not found: {path}")
    header, data = artio.read_table(path)
    if data.size == 0:
        raise DataError("metrics table is empty")
    try:
        taus, rho = performance_profile(data.T, higher_is_better=args.higher_is_better)
    except ValueError as exc:
        raise NumericError(str(exc)) from None
    outdir = Path(args.outdir or _default_outdir())
    rows = [[t, *rho[:, i]] for i, t in enumerate(taus)]
    artio.write_table(outdir / "profile.csv", ["tau", *header], rows)
    print(f"wrote {outdir / 'profile.csv'} ({taus.size} breakpoints, "
          f"{len(header)} solvers)")
    return 0


_COMMANDS = {
    "list-problems": cmd_list_problems,
    "run-smg": cmd_run_smg,
    "run-pf": cmd_run_pf,
    "bias": cmd_bias,
    "logreg": cmd_logreg,
    "metrics": cmd_metrics,
    "profile": cmd_profile,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config(parser, args, argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataError, ParseError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
