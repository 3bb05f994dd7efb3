"""Standard test functions and the multi-run BA vs MFBA comparison harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from batnav.optimizer import (
    ModifiedFrequency,
    OptimizerConfig,
    SearchSpace,
    StandardBeta,
    optimize,
    schedule_from_name,
)

MICHALEWICZ_M = 10
TIE_TOLERANCE = 1e-9


def sphere(x):
    return float(np.sum(x**2))


def easom(x):
    x1, x2 = x
    return float(-math.cos(x1) * math.cos(x2) * math.exp(-((x1 - math.pi) ** 2) - (x2 - math.pi) ** 2))


def three_hump_camel(x):
    x1, x2 = x
    return float(2 * x1**2 - 1.05 * x1**4 + x1**6 / 6 + x1 * x2 + x2**2)


def booth(x):
    x1, x2 = x
    return float((x1 + 2 * x2 - 7) ** 2 + (2 * x1 + x2 - 5) ** 2)


def rastrigin(x):
    return float(10 * x.size + np.sum(x**2 - 10 * np.cos(2 * math.pi * x)))


def michalewicz(x, m=MICHALEWICZ_M):
    i = np.arange(1, x.size + 1)
    return float(-np.sum(np.sin(x) * np.sin(i * x**2 / math.pi) ** (2 * m)))


# numerically refined minimizer of the 2-D Michalewicz function (m = 10)
_MICHALEWICZ_2D_ARGMIN = (2.202905508296, 1.570796326795)


@dataclass(frozen=True)
class BenchmarkFunction:
    name: str
    label: str
    func: Callable[[np.ndarray], float]
    low: float
    high: float
    known_fmin: float
    characteristic: str  # "unimodal" | "multimodal"
    dimension: int = 2
    fixed_dimension: bool = True
    argmin: Optional[tuple] = None

    @property
    def bounds(self) -> SearchSpace:
        return SearchSpace.uniform(self.low, self.high, self.dimension)

    def with_dimension(self, dimension: int) -> "BenchmarkFunction":
        if dimension == self.dimension:
            return self
        if self.fixed_dimension:
            raise ValueError(f"{self.name} is defined for D={self.dimension} only")
        if dimension < 1:
            raise ValueError(f"dimension must be positive, got {dimension}")
        argmin = None
        if self.argmin is not None and len(set(self.argmin)) == 1:
            argmin = (self.argmin[0],) * dimension
        return replace(self, dimension=dimension, argmin=argmin)

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.size != self.dimension:
            raise ValueError(f"{self.name}: expected {self.dimension} coordinates, got {x.size}")
        if np.any(x < self.low) or np.any(x > self.high):
            raise ValueError(f"{self.name}: point {x.tolist()} outside [{self.low}, {self.high}]")
        return self.func(x)


FUNCTIONS: Dict[str, BenchmarkFunction] = {
    f.name: f
    for f in [
        BenchmarkFunction("sphere", "F1", sphere, -5.12, 5.12, 0.0, "unimodal",
                          fixed_dimension=False, argmin=(0.0, 0.0)),
        BenchmarkFunction("easom", "F2", easom, -100.0, 100.0, -1.0, "unimodal",
                          argmin=(math.pi, math.pi)),
        BenchmarkFunction("three_hump_camel", "F3", three_hump_camel, -5.0, 5.0, 0.0, "multimodal",
                          argmin=(0.0, 0.0)),
        BenchmarkFunction("booth", "F4", booth, -10.0, 10.0, 0.0, "unimodal", argmin=(1.0, 3.0)),
        BenchmarkFunction("rastrigin", "F5", rastrigin, -5.12, 5.12, 0.0, "multimodal",
                          fixed_dimension=False, argmin=(0.0, 0.0)),
        BenchmarkFunction("michalewicz", "F6", michalewicz, 0.0, math.pi, -1.8013, "multimodal",
                          argmin=_MICHALEWICZ_2D_ARGMIN),
    ]
}


def get_function(function_id: str, dimension: Optional[int] = None) -> BenchmarkFunction:
    key = function_id.strip().lower()
    for f in FUNCTIONS.values():
        if key in (f.name, f.label.lower()):
            return f if dimension is None else f.with_dimension(dimension)
    raise KeyError(f"unknown benchmark function {function_id!r}")


def evaluate(function_id: str, x) -> float:
    x = np.asarray(x, dtype=float).reshape(-1)
    return get_function(function_id, x.size if not get_function(function_id).fixed_dimension else None)(x)


@dataclass(frozen=True)
class TrialStatistics:
    function: str
    algorithm: str
    run_count: int
    best: float
    worst: float
    mean: float
    standard_deviation: float
    values: tuple = ()
    significance_mark: str = ""

    @classmethod
    def from_values(cls, function: str, algorithm: str, values: Sequence[float]) -> "TrialStatistics":
        arr = np.asarray(values, dtype=float)
        if arr.size < 2:
            raise ValueError("at least two runs are needed for a sample standard deviation")
        # sort first so the float sums do not depend on run order
        arr = np.sort(arr)
        return cls(
            function=function,
            algorithm=algorithm,
            run_count=int(arr.size),
            best=float(arr[0]),
            worst=float(arr[-1]),
            mean=float(np.mean(arr)),
            standard_deviation=float(np.std(arr, ddof=1)),
            values=tuple(float(v) for v in values),
        )


def default_bench_config(max_iterations: int = 500) -> OptimizerConfig:
    return OptimizerConfig(max_iterations=max_iterations)


def run_trials(
    function_id: str,
    algorithm: str,
    config: OptimizerConfig,
    run_count: int = 15,
    base_seed: int = 0,
    dimension: Optional[int] = None,
    objective: Optional[Callable[[np.ndarray], float]] = None,
) -> TrialStatistics:
    """Run ``run_count`` independent optimizations, seeds ``base_seed + k``.

    ``objective`` overrides the benchmark formula (the search box still comes
    from ``function_id``); useful for harness checks.
    """
    if run_count < 2:
        raise ValueError(f"run_count must be >= 2, got {run_count}")
    bench = get_function(function_id, dimension)
    rho = config.schedule.rho if isinstance(config.schedule, ModifiedFrequency) else 0.01
    schedule = schedule_from_name(algorithm, rho)
    func = objective if objective is not None else bench
    finals = []
    for k in range(run_count):
        cfg = replace(config, schedule=schedule, rng_seed=base_seed + k)
        finals.append(optimize(func, bench.bounds, cfg).best_value)
    return TrialStatistics.from_values(bench.name, schedule.name, finals)


def compare(stats_ba: TrialStatistics, stats_mfba: TrialStatistics) -> str:
    """'+' MFBA mean better, '-' tie, '.' MFBA worse (minimization)."""
    if stats_ba.function != stats_mfba.function or stats_ba.run_count != stats_mfba.run_count:
        raise ValueError(
            "statistics come from different runs: "
            f"{stats_ba.function}/{stats_ba.run_count} vs {stats_mfba.function}/{stats_mfba.run_count}"
        )
    a, b = stats_ba.mean, stats_mfba.mean
    if abs(a - b) <= TIE_TOLERANCE * max(abs(a), abs(b)):
        return "-"
    return "+" if b < a else "."


def run_comparison(
    functions: Sequence[str],
    config: OptimizerConfig,
    run_count: int = 15,
    base_seed: int = 0,
    dimension: int = 2,
    algorithms: Sequence[str] = ("BA", "MFBA"),
) -> List[TrialStatistics]:
    """Table-style rows: for each function, one row per algorithm.

    The MFBA row carries the significance mark when both algorithms ran.
    """
    if not functions:
        raise ValueError("no benchmark functions selected")
    rows = []
    for fid in functions:
        bench = get_function(fid)
        dim = None if bench.fixed_dimension else dimension
        stats = {alg: run_trials(fid, alg, config, run_count, base_seed, dim) for alg in algorithms}
        if "BA" in stats and "MFBA" in stats:
            stats["MFBA"] = replace(stats["MFBA"], significance_mark=compare(stats["BA"], stats["MFBA"]))
        rows.extend(stats[alg] for alg in algorithms)
    return rows
