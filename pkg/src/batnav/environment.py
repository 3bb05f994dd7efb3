"""2-D workspace with constant-velocity circular obstacles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

Point = Tuple[float, float]

DEFAULT_EPSILON = 0.001


@dataclass(frozen=True)
class Obstacle:
    """Circular obstacle moving in a straight line; ``heading`` in degrees."""

    center: Point
    radius: float = 0.3
    speed: float = 0.0
    heading: float = 0.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"obstacle radius must be > 0, got {self.radius!r}")
        if self.speed < 0:
            raise ValueError(f"obstacle speed must be >= 0, got {self.speed!r}")


@dataclass(frozen=True)
class RobotState:
    position: Point
    radius: float = 0.3

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"robot radius must be > 0, got {self.radius!r}")


@dataclass(frozen=True)
class Bounds:
    x_min: float = 0.0
    y_min: float = 0.0
    x_max: float = 13.0
    y_max: float = 13.0

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"degenerate workspace bounds {self}")

    def contains(self, p) -> bool:
        return self.x_min <= p[0] <= self.x_max and self.y_min <= p[1] <= self.y_max

    def clamp(self, p) -> np.ndarray:
        return np.clip(np.asarray(p, dtype=float), [self.x_min, self.y_min], [self.x_max, self.y_max])


@dataclass(frozen=True)
class EnvironmentSpec:
    start: Point = (0.0, 0.0)
    goal: Point = (12.0, 12.0)
    obstacles: Tuple[Obstacle, ...] = ()
    bounds: Bounds = field(default_factory=Bounds)
    time_step: float = 1.0
    robot_radius: float = 0.3

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        if not self.bounds.contains(self.start):
            raise ValueError(f"start {self.start} outside workspace")
        if not self.bounds.contains(self.goal):
            raise ValueError(f"goal {self.goal} outside workspace")
        if tuple(self.start) == tuple(self.goal):
            raise ValueError("start and goal coincide")
        if not self.time_step > 0:
            raise ValueError(f"time_step must be > 0, got {self.time_step!r}")
        if not self.robot_radius > 0:
            raise ValueError(f"robot_radius must be > 0, got {self.robot_radius!r}")

    def obstacle_positions(self, t: float) -> List[np.ndarray]:
        return [obstacle_position(o, t) for o in self.obstacles]


PRESETS: Dict[str, Tuple[Obstacle, ...]] = {
    "empty": (),
    "case1": (
        Obstacle((1.0, 4.5), 0.3, 0.3, 0.0),
        Obstacle((10.5, 6.0), 0.3, 0.2, 180.0),
        Obstacle((6.0, 12.0), 0.3, 0.15, 270.0),
    ),
    "case2": (
        Obstacle((4.0, 2.0), 0.3, 0.3, 111.8),
        Obstacle((3.0, 7.0), 0.3, 0.2, 315.0),
        Obstacle((9.0, 4.0), 0.3, 0.2, 126.8),
        Obstacle((7.0, 9.0), 0.3, 0.25, 315.0),
        Obstacle((11.2, 7.0), 0.3, 0.22, 150.0),
    ),
}


def preset(name: str, **overrides) -> EnvironmentSpec:
    try:
        obstacles = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown environment preset {name!r}; choose from {sorted(PRESETS)}") from None
    return EnvironmentSpec(obstacles=obstacles, **overrides)


def obstacle_position(obstacle: Obstacle, t: float) -> np.ndarray:
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    theta = math.radians(obstacle.heading)
    d = obstacle.speed * t
    return np.array([obstacle.center[0] + d * math.cos(theta), obstacle.center[1] + d * math.sin(theta)])


def inflate_radius(obstacle: Obstacle, robot_radius: float) -> float:
    return obstacle.radius + robot_radius


def collision(robot_point, obstacle: Obstacle, t: float, robot_radius: float) -> bool:
    """True when the discs overlap; touching is allowed."""
    c = obstacle_position(obstacle, t)
    return segment_length(robot_point, c) < inflate_radius(obstacle, robot_radius)


def segment_length(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def fitness(candidate, reference, epsilon: float = DEFAULT_EPSILON) -> float:
    return 1.0 / (segment_length(candidate, reference) + epsilon)


def path_length(waypoints: Sequence) -> float:
    if len(waypoints) < 2:
        raise ValueError("a path needs at least two waypoints")
    return float(sum(segment_length(p, q) for p, q in zip(waypoints[:-1], waypoints[1:])))
