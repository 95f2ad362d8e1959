#!/usr/bin/env python3
"""Desk-scale convergence benchmark over synthetic graph families.

Runs seeded Monte-Carlo batches of the MM solver (optionally also the
projected-gradient oracle) for a list of graph sizes and prints mean and
median iteration counts plus mean solve time per setting. Output bundles
land in one directory per setting under --out.

Example:
    python3 scripts/run_er_benchmark.py --out bench-out --runs 20 \
        --sizes 100 200 --seed 7
"""

import argparse
from pathlib import Path

from mmgl import bench
from mmgl.baseline_oracle import OracleConfig
from mmgl.mm_solver import SolverConfig


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=("er", "sbm"), default="er")
    parser.add_argument("--sizes", type=int, nargs="+", default=[100])
    parser.add_argument("--prob-edge", type=float, default=0.1)
    parser.add_argument("--p-in", type=float, default=0.3)
    parser.add_argument("--p-out", type=float, default=0.05)
    parser.add_argument("--n", type=int, default=1200)
    parser.add_argument("--sigma", type=float, default=0.1)
    parser.add_argument("--alpha", type=float, default=100.0)
    parser.add_argument("--beta", type=float, default=1e4)
    parser.add_argument("--epsilon", type=float, default=1e-4)
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--with-oracle", action="store_true",
                        help="also run the projected-gradient oracle")
    parser.add_argument("--oracle-max-iters", type=int, default=5000,
                        help="oracle iteration cap; capped runs are flagged, not fatal")
    args = parser.parse_args()

    solvers = ["mm"] + (["pg-oracle"] if args.with_oracle else [])
    print(f"{'setting':>16} {'solver':>10} {'mean':>8} {'median':>8} {'time[s]':>9}")
    for p in args.sizes:
        for solver in solvers:
            tag = f"{args.family}{p}-{solver}"
            spec = bench.ExperimentSpec(
                family=args.family, p=p, prob_edge=args.prob_edge,
                p_in=args.p_in, p_out=args.p_out, n=args.n, sigma=args.sigma,
                alpha=args.alpha, beta=args.beta, solver=solver,
                solver_config=SolverConfig(epsilon=args.epsilon),
                oracle_config=OracleConfig(max_iters=args.oracle_max_iters),
                monte_carlo_runs=args.runs, seed=args.seed,
                out_dir=str(Path(args.out) / tag))
            summary = bench.run_montecarlo(spec)
            flag = "" if summary.convergence_rate == 1.0 else \
                f"  ({summary.runs - summary.converged_runs} runs hit the cap)"
            print(f"{args.family + ' p=' + str(p):>16} {solver:>10} "
                  f"{summary.mean_iterations:>8.2f} {summary.median_iterations:>8.1f} "
                  f"{summary.mean_wall_time_s:>9.4f}{flag}", flush=True)


if __name__ == "__main__":
    main()
