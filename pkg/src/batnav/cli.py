"""batnav command line: ``bench``, ``plan`` and ``compare``.

Exit status is 0 when every requested run completed (collisions and timeouts
are completed runs), 2 on configuration errors and 1 on I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from batnav import report
from batnav.benchmarks import FUNCTIONS, run_comparison
from batnav.config import ALGO_CHOICES, ConfigError, Settings, load_config
from batnav.environment import PRESETS, EnvironmentSpec
from batnav.planner import RunsResult, best_of_runs

log = logging.getLogger("batnav")


@dataclass(frozen=True)
class RunConfig:
    command: str
    settings: Settings
    out_dir: Path
    config_path: Optional[Path] = None


def build_run_config(args: argparse.Namespace) -> RunConfig:
    settings = load_config(args.config)
    run = settings.run
    if args.algo is not None:
        run = replace(run, algo=args.algo)
    if args.seed is not None:
        run = replace(run, seed=args.seed)
    bench = settings.bench
    if args.runs is not None:
        if args.runs < 1:
            raise ConfigError(f"--runs must be >= 1, got {args.runs}")
        run = replace(run, runs=args.runs)
        bench = replace(bench, runs=args.runs)
    if args.command == "bench" and bench.runs < 2:
        raise ConfigError("bench needs --runs >= 2 for a standard deviation")
    if args.functions is not None:
        if not args.functions:
            raise ConfigError("--functions selects no benchmark function")
        unknown = [f for f in args.functions if f not in FUNCTIONS]
        if unknown:
            raise ConfigError(f"unknown benchmark function(s): {', '.join(unknown)}")
        bench = replace(bench, functions=tuple(args.functions))
    settings = replace(settings, run=run, bench=bench)
    if args.preset is not None:
        env = settings.environment
        settings = replace(
            settings,
            preset=args.preset,
            environment=replace(env, obstacles=PRESETS[args.preset]),
        )
    if args.command == "compare" and settings.run.algo != "both":
        raise ConfigError("compare needs both algorithms (--algo both)")
    return RunConfig(args.command, settings, Path(args.out), args.config)


def _write(out_dir: Path, name: str, text: str) -> Path:
    path = out_dir / name
    path.write_text(text, encoding="utf-8", newline="")
    return path


def cmd_bench(rc: RunConfig) -> List[Path]:
    s = rc.settings
    cfg = replace(s.optimizer, max_iterations=s.bench.iterations)
    log.info("bench: %d functions x %s, %d runs, %d iterations",
             len(s.bench.functions), "/".join(s.algorithms), s.bench.runs, s.bench.iterations)
    rows = run_comparison(s.bench.functions, cfg, s.bench.runs, s.run.seed, s.bench.dimension, s.algorithms)
    rc.out_dir.mkdir(parents=True, exist_ok=True)
    text = report.bench_text(rows)
    print(text, end="")
    return [_write(rc.out_dir, "bench.csv", report.bench_csv(rows)), _write(rc.out_dir, "bench.txt", text)]


def _plan_one(rc: RunConfig, algorithm: str) -> RunsResult:
    s = rc.settings
    planner = replace(s.planner, algorithm=algorithm)
    env: EnvironmentSpec = s.environment
    result = best_of_runs(env, planner, s.run.runs, s.run.seed)
    tag = algorithm.lower()
    for k, tr in enumerate(result.traces, 1):
        _write(rc.out_dir, f"trace_{tag}_run{k:02d}.csv", report.trace_csv(tr))
        log.info("%s run %d (seed %d): length %.4f m, %d cycles, reached=%s collision=%s, %.3f s",
                 algorithm, k, tr.seed, tr.path_length, tr.cycle_count, tr.reached, tr.collision, tr.wall_time)
    shown = result.best if result.best is not None else result.traces[0]
    _write(rc.out_dir, f"path_{tag}.svg", report.path_svg(shown, env, planner.sensor.sensing_range))
    _write(rc.out_dir, f"summary_{tag}.csv", report.summary_csv(result))
    text = report.summary_text(result, algorithm)
    _write(rc.out_dir, f"summary_{tag}.txt", text)
    print(text, end="")
    return result


def cmd_plan(rc: RunConfig) -> Dict[str, RunsResult]:
    rc.out_dir.mkdir(parents=True, exist_ok=True)
    return {alg: _plan_one(rc, alg) for alg in rc.settings.algorithms}


def cmd_compare(rc: RunConfig) -> Dict[str, RunsResult]:
    results = cmd_plan(rc)
    _write(rc.out_dir, "compare.csv", report.compare_csv(results))
    text = report.compare_text(results)
    _write(rc.out_dir, "compare.txt", text)
    print(text, end="")
    return results


COMMANDS = {"bench": cmd_bench, "plan": cmd_plan, "compare": cmd_compare}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="batnav", description="Bat-algorithm optimizer and path planner")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "bench": "BA vs MFBA on the benchmark functions",
        "plan": "run path-planning missions and write traces",
        "compare": "BA vs MFBA mission fitness statistics",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", type=Path, default=None, help="TOML configuration file")
        p.add_argument("--algo", choices=ALGO_CHOICES, default=None, help="algorithm(s) to run")
        p.add_argument("--runs", type=int, default=None, help="number of runs (seeds seed..seed+N-1)")
        p.add_argument("--seed", type=int, default=None, help="base seed")
        p.add_argument("--preset", choices=sorted(PRESETS), default=None, help="environment preset")
        p.add_argument("--out", default="out", help="output directory")
        if name == "bench":
            p.add_argument("--functions", nargs="*", default=None, help="subset of benchmark functions")
        else:
            p.set_defaults(functions=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="[batnav] %(message)s")
    try:
        rc = build_run_config(args)
        COMMANDS[rc.command](rc)
    except ConfigError as exc:
        print(f"batnav: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"batnav: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
