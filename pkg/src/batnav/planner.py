"""Two-mode mission loop: bat-swarm waypoint generation while the sensors are
clear, gap-vector avoidance while an obstacle is in range."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from batnav.environment import (
    Bounds,
    EnvironmentSpec,
    collision,
    inflate_radius,
    obstacle_position,
    path_length,
    segment_length,
)
from batnav.optimizer import OptimizerConfig, optimize, schedule_from_name
from batnav.perception import (
    SensorConfig,
    build_gap_vector,
    build_sensory_vector,
    obstacle_detected,
    rank_gaps,
)

NAVIGATE = "Navigate"
AVOID = "Avoid"
STEP_TOL = 1e-9


@dataclass(frozen=True)
class PlannerConfig:
    algorithm: str = "MFBA"
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    step_length: float = 0.5
    waypoint_iterations: int = 50
    max_cycles: int = 400
    goal_tolerance: float = 0.1
    sensor: SensorConfig = field(default_factory=SensorConfig)

    def __post_init__(self):
        object.__setattr__(self, "algorithm", self.algorithm.upper())
        if self.algorithm not in ("BA", "MFBA"):
            raise ValueError(f"invalid planner setting algorithm={self.algorithm!r}")
        if not self.step_length > 0:
            raise ValueError(f"invalid planner setting step_length={self.step_length!r}")
        if not self.goal_tolerance > 0:
            raise ValueError(f"invalid planner setting goal_tolerance={self.goal_tolerance!r}")
        if not (isinstance(self.max_cycles, int) and self.max_cycles > 0):
            raise ValueError(f"invalid planner setting max_cycles={self.max_cycles!r}")
        if not (isinstance(self.waypoint_iterations, int) and self.waypoint_iterations >= 0):
            raise ValueError(f"invalid planner setting waypoint_iterations={self.waypoint_iterations!r}")

    def waypoint_optimizer(self, seed: int) -> OptimizerConfig:
        rho = getattr(self.optimizer.schedule, "rho", 0.01)
        return replace(
            self.optimizer,
            schedule=schedule_from_name(self.algorithm, rho),
            max_iterations=self.waypoint_iterations,
            rng_seed=seed,
        )


class DiscRegion:
    """Disc of radius ``radius`` around ``center``, cut by the workspace box.

    Sampling rejects box draws outside the disc; clamping clips to the box and
    then pulls the point radially onto the disc.
    """

    dimension = 2

    def __init__(self, center, radius: float, bounds: Optional[Bounds] = None):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        lo = self.center - self.radius
        hi = self.center + self.radius
        if bounds is not None:
            lo = np.maximum(lo, [bounds.x_min, bounds.y_min])
            hi = np.minimum(hi, [bounds.x_max, bounds.y_max])
        self.lower, self.upper = lo, hi

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        while True:
            x = self.lower + rng.random(2) * (self.upper - self.lower)
            if np.hypot(*(x - self.center)) <= self.radius:
                return x

    def clamp(self, x: np.ndarray) -> np.ndarray:
        x = np.clip(x, self.lower, self.upper)
        offset = x - self.center
        dist = float(np.hypot(*offset))
        if dist > self.radius:
            x = self.center + offset * (self.radius / dist)
        return x


def _waypoint_seed(seed: int, cycle: int) -> int:
    return int(np.random.SeedSequence([seed, cycle]).generate_state(1, np.uint64)[0])


def plan_next_waypoint(
    robot_point,
    goal,
    config: PlannerConfig,
    env: Optional[EnvironmentSpec] = None,
    t: float = 0.0,
    seed: int = 0,
) -> np.ndarray:
    """Best point within one step of the robot, by distance to ``goal``.

    With ``env`` given, candidates inside an inflated obstacle at ``t + dt``
    score zero fitness and the search is cut to the workspace.
    """
    robot = np.asarray(robot_point, dtype=float)
    goal = np.asarray(goal, dtype=float)
    L = config.step_length
    if segment_length(robot, goal) <= L:
        return goal.copy()

    eps = config.optimizer.epsilon
    blockers = []
    if env is not None:
        t_next = t + env.time_step
        blockers = [
            (obstacle_position(o, t_next), inflate_radius(o, env.robot_radius)) for o in env.obstacles
        ]

    def objective(c):
        for center, R in blockers:
            if math.hypot(c[0] - center[0], c[1] - center[1]) < R:
                return 0.0
        return -1.0 / (math.hypot(c[0] - goal[0], c[1] - goal[1]) + eps)

    region = DiscRegion(robot, L, env.bounds if env is not None else None)
    result = optimize(objective, region, config.waypoint_optimizer(seed))
    return result.best_position


def avoidance_step(robot_point, escape_bearing: float, step_length: float, bounds: Optional[Bounds] = None):
    theta = math.radians(escape_bearing)
    p = np.array(
        [robot_point[0] + step_length * math.cos(theta), robot_point[1] + step_length * math.sin(theta)]
    )
    if bounds is not None:
        p = bounds.clamp(p)
    return p


def _clear_at(point, env: EnvironmentSpec, t: float) -> bool:
    return not any(collision(point, o, t, env.robot_radius) for o in env.obstacles)


def choose_escape(robot_point, vs, goal, env: EnvironmentSpec, t: float, config: PlannerConfig) -> Optional[float]:
    """Free gap nearest the goal whose step stays clear of every obstacle at
    ``t + dt``; None means hold position this cycle."""
    t_next = t + env.time_step
    for bearing in rank_gaps(build_gap_vector(vs), robot_point, goal):
        if _clear_at(avoidance_step(robot_point, bearing, config.step_length, env.bounds), env, t_next):
            return bearing
    return None


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    time: float
    position: Tuple[float, float]
    mode: str
    sensory_vector: Tuple[int, ...]
    escape_bearing: Optional[float]
    obstacles: Tuple[Tuple[float, float], ...]


@dataclass
class MissionTrace:
    records: List[CycleRecord]
    algorithm: str
    seed: int
    reached: bool
    collision: bool
    wall_time: float = 0.0

    @property
    def positions(self) -> List[Tuple[float, float]]:
        return [r.position for r in self.records]

    @property
    def path_length(self) -> float:
        if len(self.records) < 2:
            return 0.0
        return path_length(self.positions)

    @property
    def cycle_count(self) -> int:
        return self.records[-1].cycle if self.records else 0

    @property
    def succeeded(self) -> bool:
        return self.reached and not self.collision

    def run_fitness(self, epsilon: float = 0.001) -> float:
        return 1.0 / (self.path_length + epsilon)


def run_mission(env: EnvironmentSpec, config: PlannerConfig, seed: int = 0) -> MissionTrace:
    started = time.perf_counter()
    goal = np.asarray(env.goal, dtype=float)
    p = np.asarray(env.start, dtype=float)
    records = []
    reached = collided = False
    cycle = 0
    while True:
        t = cycle * env.time_step
        obstacles = tuple(tuple(float(v) for v in obstacle_position(o, t)) for o in env.obstacles)
        vs = build_sensory_vector(p, env.obstacles, t, config.sensor, env.robot_radius)
        collided = any(collision(p, o, t, env.robot_radius) for o in env.obstacles)
        reached = segment_length(p, goal) <= config.goal_tolerance
        mode = AVOID if obstacle_detected(vs) else NAVIGATE
        bearing = None
        done = collided or reached or cycle >= config.max_cycles
        if not done:
            if mode == AVOID:
                bearing = choose_escape(p, vs, goal, env, t, config)
                nxt = p if bearing is None else avoidance_step(p, bearing, config.step_length, env.bounds)
            else:
                nxt = plan_next_waypoint(p, goal, config, env, t, _waypoint_seed(seed, cycle))
        records.append(
            CycleRecord(cycle, t, (float(p[0]), float(p[1])), mode, vs, bearing, obstacles)
        )
        if done:
            break
        p = nxt
        cycle += 1
    return MissionTrace(
        records=records,
        algorithm=config.algorithm,
        seed=seed,
        reached=reached and not collided,
        collision=collided,
        wall_time=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class FitnessStatistics:
    minimum: float
    maximum: float
    standard_deviation: float
    mean: float
    count: int

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "FitnessStatistics":
        arr = np.sort(np.asarray(values, dtype=float))
        if arr.size == 0:
            nan = float("nan")
            return cls(nan, nan, nan, nan, 0)
        sd = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
        return cls(float(arr[0]), float(arr[-1]), sd, float(np.mean(arr)), int(arr.size))


@dataclass
class RunsResult:
    traces: List[MissionTrace]
    best: Optional[MissionTrace]
    epsilon: float = 0.001

    @property
    def fitness_values(self) -> List[float]:
        return [tr.run_fitness(self.epsilon) for tr in self.traces if tr.succeeded]

    @property
    def fitness_statistics(self) -> FitnessStatistics:
        return FitnessStatistics.from_values(self.fitness_values)


def best_of_runs(env: EnvironmentSpec, config: PlannerConfig, run_count: int = 10, base_seed: int = 0) -> RunsResult:
    """Run ``run_count`` missions (seeds ``base_seed + k``); best is the shortest
    collision-free path that reached the goal."""
    if run_count < 1:
        raise ValueError(f"run_count must be >= 1, got {run_count}")
    traces = [run_mission(env, config, base_seed + k) for k in range(run_count)]
    finished = [tr for tr in traces if tr.succeeded]
    best = min(finished, key=lambda tr: tr.path_length) if finished else None
    return RunsResult(traces=traces, best=best, epsilon=config.optimizer.epsilon)
