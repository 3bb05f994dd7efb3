"""Bat Algorithm / modified-frequency Bat Algorithm optimizer, benchmark
harness, and a 2-D dynamic-obstacle path planner built on them."""

from batnav.optimizer import (
    ModifiedFrequency,
    OptimizationResult,
    OptimizerConfig,
    SearchSpace,
    StandardBeta,
    optimize,
)
from batnav.environment import EnvironmentSpec, Obstacle, preset
from batnav.perception import SensorConfig
from batnav.planner import PlannerConfig, best_of_runs, run_mission

__version__ = "0.1.0"

__all__ = [
    "EnvironmentSpec",
    "ModifiedFrequency",
    "Obstacle",
    "OptimizationResult",
    "OptimizerConfig",
    "PlannerConfig",
    "SearchSpace",
    "SensorConfig",
    "StandardBeta",
    "best_of_runs",
    "optimize",
    "preset",
    "run_mission",
]
