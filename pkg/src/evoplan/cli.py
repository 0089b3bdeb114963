"""Command-line front end: solve instances, run benchmark suites, query the
breadth-first oracle, and display stored plans.

Exit codes: 0 on success (solve/oracle: a solution was found), 3 when the
search or oracle finished without solving, 1 on errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .bench import default_corpus_dir, run_bench
from .engine import EvolveResult, GpParams, evolve
from .errors import EvoplanError
from .instance_io import load_instance
from .oracle import bfs_optimal
from .simulate import render_plan

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSOLVED = 3


def _add_gp_args(parser: argparse.ArgumentParser) -> None:
    defaults = GpParams()
    parser.add_argument("--pop", type=int, default=defaults.population_size,
                        help="population size")
    parser.add_argument("--gens", type=int, default=defaults.max_generations,
                        help="maximum generations")
    parser.add_argument("--seed", type=int, default=0, help="base random seed")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel fitness-evaluation workers")
    parser.add_argument("--tournament", type=int, default=defaults.tournament_size)
    parser.add_argument("--crossover-fraction", type=float,
                        default=defaults.crossover_fraction)
    parser.add_argument("--elitism", type=int, default=defaults.elitism)
    parser.add_argument("--max-depth", type=int, default=defaults.max_depth)
    parser.add_argument("--max-size", type=int, default=defaults.max_size)


def _params_from(args: argparse.Namespace, stop_on_first: bool = False) -> GpParams:
    return GpParams(
        population_size=args.pop,
        max_generations=args.gens,
        crossover_fraction=args.crossover_fraction,
        tournament_size=args.tournament,
        max_depth=args.max_depth,
        max_size=args.max_size,
        seed=args.seed,
        stop_on_first_solution=stop_on_first,
        elitism=args.elitism,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoplan",
        description="Evolve linear plans for conjunctive-goal planning problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="evolve a plan for one instance file")
    p_solve.add_argument("instance", type=Path)
    _add_gp_args(p_solve)
    p_solve.add_argument("--stop-on-first", action="store_true",
                         help="stop at the first solution instead of improving it")
    p_solve.add_argument("--runs", type=int, default=1, help="seed-sweep run count")
    p_solve.add_argument("--out", type=Path, default=Path("evoplan-out"))
    p_solve.add_argument("--log-format", choices=("text", "jsonl"), default="text")

    p_bench = sub.add_parser("bench", help="run a benchmark suite over the corpus")
    p_bench.add_argument("suite", choices=("bp", "rnp", "2rnp"))
    _add_gp_args(p_bench)
    p_bench.add_argument("--runs", type=int, default=1, help="seeds per instance")
    p_bench.add_argument("--out", type=Path, default=Path("bench-out"))
    p_bench.add_argument("--corpus", type=Path, default=None)

    p_oracle = sub.add_parser("oracle", help="breadth-first optimal plan search")
    p_oracle.add_argument("instance", type=Path)
    p_oracle.add_argument("--max-depth", type=int, default=64)
    p_oracle.add_argument("--max-states", type=int, default=500_000)

    p_show = sub.add_parser("show-plan", help="print the plan stored in a run directory")
    p_show.add_argument("logdir", type=Path)
    p_show.add_argument("--executed-only", action="store_true")

    return parser


def _write_run(out: Path, result: EvolveResult, log_format: str) -> None:
    out.mkdir(parents=True, exist_ok=True)
    if log_format == "jsonl":
        (out / "run.jsonl").write_text(result.log.to_jsonl())
    else:
        (out / "run.log").write_text(result.log.to_text())
    (out / "plan.txt").write_text(render_plan(result.plan, "all") + "\n")
    (out / "plan-executed.txt").write_text(
        render_plan(result.plan, "executed-only") + "\n"
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    base = _params_from(args, stop_on_first=args.stop_on_first)
    any_solved = False
    for run in range(args.runs):
        params = replace(base, seed=base.seed + run)
        result = evolve(instance, params, workers=args.workers)
        out = args.out if args.runs == 1 else args.out / f"seed-{params.seed}"
        _write_run(out, result, args.log_format)
        fit = result.best.fitness
        if result.solved:
            any_solved = True
            print(
                f"seed {params.seed}: solved at generation "
                f"{result.log.first_solution_gen}, best executed length "
                f"{fit.executed_length} ({out})"
            )
        else:
            print(
                f"seed {params.seed}: unsolved within budget, best goal fitness "
                f"{fit.goal_fitness} ({out})"
            )
    return EXIT_OK if any_solved else EXIT_UNSOLVED


def _cmd_bench(args: argparse.Namespace) -> int:
    params = _params_from(args, stop_on_first=True)
    report = run_bench(
        args.suite,
        params,
        runs=args.runs,
        workers=args.workers,
        corpus=args.corpus or default_corpus_dir(),
    )
    text = report.to_text()
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "summary.txt").write_text(text)
    (args.out / "summary.json").write_text(report.to_json())
    print(text, end="")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    result = bfs_optimal(instance, max_depth=args.max_depth, max_states=args.max_states)
    print(f"status: {result.status}")
    if result.solved:
        print(f"optimal {result.optimal_length}")
        for i, ga in enumerate(result.plan, start=1):
            print(f"{i}: {ga}")
        return EXIT_OK
    if result.status == "budget-exceeded":
        print(
            f"search budget exceeded (max-depth {args.max_depth}, "
            f"max-states {args.max_states})"
        )
    return EXIT_UNSOLVED


def _cmd_show_plan(args: argparse.Namespace) -> int:
    name = "plan-executed.txt" if args.executed_only else "plan.txt"
    path = args.logdir / name
    if not path.exists():
        print(f"no plan file at {path}", file=sys.stderr)
        return EXIT_ERROR
    print(path.read_text(), end="")
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "oracle": _cmd_oracle,
    "show-plan": _cmd_show_plan,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (EvoplanError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
