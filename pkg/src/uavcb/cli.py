"""Command-line entry points.

``uavcb run`` executes one experiment and writes the report artifacts plus
figures; ``uavcb scenario`` generates a scenario file from the built-in
defaults.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import moea, scenario as scenario_mod
from .report import RunReport, execute_experiment

__all__ = ["main", "run_experiment"]


def run_experiment(
    scenario_path: str | None,
    config_path: str | None,
    out_dir: str,
    algo: str = "cnsga2",
    seed: int | None = None,
    pop: int | None = None,
    iters: int | None = None,
    workers: int | None = None,
    figures: bool = True,
) -> RunReport:
    """Load inputs, apply flag overrides, and execute one experiment."""
    if scenario_path is None:
        scn = scenario_mod.load_bundled_scenario("default-8uav")
    else:
        scn = scenario_mod.load_scenario(scenario_path)

    if config_path is None:
        config = moea.AlgoConfig()
    else:
        with open(config_path, encoding="utf-8") as fh:
            config = moea.AlgoConfig.from_dict(json.load(fh))

    overrides = {}
    if seed is not None:
        overrides["master_seed"] = seed
    if pop is not None:
        overrides["pop_size"] = pop
    if iters is not None:
        overrides["max_iters"] = iters
    if workers is not None:
        overrides["parallel_workers"] = workers
    if overrides:
        config = dataclasses.replace(config, **overrides)

    return execute_experiment(scn, config, out_dir, algorithm=algo, figures=figures)


def _cmd_run(args: argparse.Namespace) -> int:
    report = run_experiment(
        scenario_path=args.scenario,
        config_path=args.config,
        out_dir=args.out,
        algo=args.algo,
        seed=args.seed,
        pop=args.pop,
        iters=args.iters,
        workers=args.workers,
        figures=not args.no_figures,
    )
    print(f"wrote {report.out_dir}")
    print(
        f"algorithm={report.algorithm} archive={len(report.archive)} "
        f"sinr_improvement={report.sinr_improvement_factor:.3f}x "
        f"hypervolume={report.hypervolume:.6g} wall={report.wall_time_s:.1f}s"
    )
    return 0


def _cmd_scenario(args: argparse.Namespace) -> int:
    scn = scenario_mod.build_default_scenario(args.n_uavs, args.seed)
    scenario_mod.save_scenario(scn, args.out)
    print(f"wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="uavcb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one optimization experiment")
    p_run.add_argument("--scenario", help="scenario JSON path (default: bundled 8-UAV scenario)")
    p_run.add_argument("--config", help="solver config JSON path (default: built-in defaults)")
    p_run.add_argument(
        "--algo",
        choices=["cnsga2", "nsga2", "baseline"],
        default="cnsga2",
        help="solver preset, or the unoptimized before-CB baseline",
    )
    p_run.add_argument("--seed", type=int, help="override the master seed")
    p_run.add_argument("--out", required=True, help="output directory for report artifacts")
    p_run.add_argument("--pop", type=int, help="override the population size")
    p_run.add_argument("--iters", type=int, help="override the iteration count")
    p_run.add_argument("--workers", type=int, help="parallel fitness-evaluation workers")
    p_run.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p_run.set_defaults(func=_cmd_run)

    p_scn = sub.add_parser("scenario", help="write a default scenario file")
    p_scn.add_argument("--n-uavs", type=int, default=8)
    p_scn.add_argument("--seed", type=int, default=7)
    p_scn.add_argument("--out", required=True, help="output JSON path")
    p_scn.set_defaults(func=_cmd_scenario)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
