"""Sector-based virtual sensing and gap selection.

Sectors are fixed in the world frame: sector ``i`` (1-based) covers bearings
``[(i-1)*w, i*w)`` with ``w = 360 / sensor_count``, measured counter-clockwise
from the +x axis. Gap bit ``i`` combines sectors ``i`` and ``i+1`` and maps to
the bearing ``i*w`` on their shared edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from batnav.environment import Obstacle, inflate_radius, obstacle_position

# overlaps thinner than this (degrees) count as touching, not occupying
ANGLE_TOL = 1e-9

BLOCKED = None


@dataclass(frozen=True)
class SensorConfig:
    sensor_count: int = 12
    sensing_range: float = 0.8

    def __post_init__(self):
        if not (isinstance(self.sensor_count, int) and self.sensor_count >= 3):
            raise ValueError(f"sensor_count must be an integer >= 3, got {self.sensor_count!r}")
        if not self.sensing_range > 0:
            raise ValueError(f"sensing_range must be > 0, got {self.sensing_range!r}")

    @property
    def sector_width(self) -> float:
        return 360.0 / self.sensor_count


@dataclass(frozen=True)
class AngularInterval:
    """Counter-clockwise arc starting at ``start`` (in [0, 360)) spanning ``width`` degrees."""

    start: float
    width: float

    @property
    def end(self) -> float:
        return (self.start + self.width) % 360.0

    @property
    def full(self) -> bool:
        return self.width >= 360.0

    def pieces(self) -> list:
        """Split into non-wrapping [a, b] pieces inside [0, 360]."""
        if self.full:
            return [(0.0, 360.0)]
        stop = self.start + self.width
        if stop <= 360.0:
            return [(self.start, stop)]
        return [(self.start, 360.0), (0.0, stop - 360.0)]


FULL_CIRCLE = AngularInterval(0.0, 360.0)


def bearing_deg(origin, target) -> float:
    return math.degrees(math.atan2(target[1] - origin[1], target[0] - origin[0])) % 360.0


def angular_distance(a: float, b: float) -> float:
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def tangent_interval(
    robot_point,
    obstacle: Obstacle,
    t: float,
    robot_radius: float,
    sensing_range: float = 0.8,
) -> Optional[AngularInterval]:
    """Bearings covered by the inflated obstacle, or None when out of range."""
    c = obstacle_position(obstacle, t)
    R = inflate_radius(obstacle, robot_radius)
    d = math.hypot(c[0] - robot_point[0], c[1] - robot_point[1])
    if d - R > sensing_range:
        return None
    if d <= R:
        return FULL_CIRCLE
    half = math.degrees(math.asin(R / d))
    center = bearing_deg(robot_point, c)
    return AngularInterval((center - half) % 360.0, 2.0 * half)


def interval_sectors(interval: AngularInterval, sensor_count: int = 12) -> Tuple[int, ...]:
    w = 360.0 / sensor_count
    bits = [0] * sensor_count
    for a, b in interval.pieces():
        for i in range(sensor_count):
            lo, hi = i * w, (i + 1) * w
            if b - a <= ANGLE_TOL:
                # degenerate arc: the single bearing falls in one half-open sector
                if lo <= a % 360.0 < hi:
                    bits[i] = 1
            elif min(b, hi) - max(a, lo) > ANGLE_TOL:
                bits[i] = 1
    return tuple(bits)


def build_sensory_vector(
    robot_point,
    obstacles: Iterable[Obstacle],
    t: float,
    sensor_config: SensorConfig = SensorConfig(),
    robot_radius: float = 0.3,
) -> Tuple[int, ...]:
    n = sensor_config.sensor_count
    bits = [0] * n
    for obstacle in obstacles:
        interval = tangent_interval(robot_point, obstacle, t, robot_radius, sensor_config.sensing_range)
        if interval is None:
            continue
        bits = [a | b for a, b in zip(bits, interval_sectors(interval, n))]
    return tuple(bits)


def build_gap_vector(vs: Sequence[int]) -> Tuple[int, ...]:
    n = len(vs)
    return tuple(int(vs[i] or vs[(i + 1) % n]) for i in range(n))


def rank_gaps(vg: Sequence[int], robot_point, goal) -> List[float]:
    """Free-gap bearings (degrees) ordered by angular distance to the goal
    bearing; ties go to the smaller gap index."""
    n = len(vg)
    w = 360.0 / n
    target = bearing_deg(robot_point, goal)
    free = [(i * w) % 360.0 for i in range(1, n + 1) if not vg[i - 1]]
    # sort is stable, so equal distances keep index order
    return sorted(free, key=lambda b: angular_distance(b, target))


def select_gap(vg: Sequence[int], robot_point, goal) -> Optional[float]:
    """Free-gap bearing closest to the goal, or None (blocked) when every bit is set."""
    ranked = rank_gaps(vg, robot_point, goal)
    return ranked[0] if ranked else BLOCKED


def obstacle_detected(vs: Sequence[int]) -> bool:
    return any(vs)


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


def str_to_bits(text: str) -> Tuple[int, ...]:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return tuple(int(c) for c in text)
