"""Bat Algorithm engine with the standard random-beta and the modified
(increasing) frequency schedules.

All randomness flows through a single ``numpy.random.Generator`` backed by
PCG64 (``numpy.random.default_rng(seed)``), so a run replays bit-for-bit from
its seed on any platform numpy supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Protocol, Sequence, Union

import numpy as np

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class StandardBeta:
    """beta drawn uniformly from [0, 1] at every frequency update."""

    name = "BA"


@dataclass(frozen=True)
class ModifiedFrequency:
    """beta = (t/T) * exp(-rho * r), r ~ U(0, 1); grows with the iteration."""

    rho: float = 0.01
    name = "MFBA"

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho!r}")


Schedule = Union[StandardBeta, ModifiedFrequency]


def schedule_from_name(name: str, rho: float = 0.01) -> Schedule:
    key = name.strip().upper()
    if key == "BA":
        return StandardBeta()
    if key == "MFBA":
        return ModifiedFrequency(rho)
    raise ValueError(f"unknown algorithm {name!r}; expected 'BA' or 'MFBA'")


@dataclass(frozen=True)
class OptimizerConfig:
    """Bat Algorithm parameters. Defaults are the path-planning settings."""

    population_size: int = 5
    f_min: float = 0.0
    f_max: float = 10.0
    alpha: float = 0.98
    gamma: float = 0.8
    sigma: float = 0.3
    initial_loudness: float = 1.0
    initial_pulse_rate: float = 0.5
    max_iterations: int = 100
    rng_seed: int = 0
    schedule: Schedule = field(default_factory=lambda: ModifiedFrequency(0.01))
    epsilon: float = 0.001

    def __post_init__(self):
        checks = [
            ("population_size", isinstance(self.population_size, int) and self.population_size >= 1),
            ("f_max", self.f_min <= self.f_max),
            ("alpha", 0 < self.alpha < 1),
            ("gamma", self.gamma > 0),
            ("sigma", self.sigma > 0),
            ("initial_loudness", self.initial_loudness > 0),
            ("initial_pulse_rate", 0 <= self.initial_pulse_rate <= 1),
            ("max_iterations", isinstance(self.max_iterations, int) and self.max_iterations >= 0),
            ("rng_seed", isinstance(self.rng_seed, int) and 0 <= self.rng_seed < 2**64),
            ("epsilon", self.epsilon > 0),
        ]
        for name, ok in checks:
            if not ok:
                raise ValueError(f"invalid optimizer setting {name}={getattr(self, name)!r}")
        if not isinstance(self.schedule, (StandardBeta, ModifiedFrequency)):
            raise ValueError(f"invalid optimizer setting schedule={self.schedule!r}")

    @property
    def algorithm(self) -> str:
        return self.schedule.name


class Region(Protocol):
    """Feasible set the swarm lives in: must sample and clamp points."""

    dimension: int

    def sample(self, rng: np.random.Generator) -> np.ndarray: ...

    def clamp(self, x: np.ndarray) -> np.ndarray: ...


class SearchSpace:
    """Axis-aligned box ``lower <= x <= upper``."""

    def __init__(self, lower: Sequence[float], upper: Sequence[float]):
        lower = np.asarray(lower, dtype=float).reshape(-1)
        upper = np.asarray(upper, dtype=float).reshape(-1)
        if lower.shape != upper.shape or lower.size == 0:
            raise ValueError("lower and upper must be non-empty and the same length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        self.lower = lower
        self.upper = upper

    @classmethod
    def uniform(cls, low: float, high: float, dimension: int) -> "SearchSpace":
        return cls([low] * dimension, [high] * dimension)

    @property
    def dimension(self) -> int:
        return self.lower.size

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        # x_min + U(0,1) * (x_max - x_min)
        return self.lower + rng.random(self.dimension) * (self.upper - self.lower)

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __repr__(self):
        return f"SearchSpace(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


@dataclass
class Bat:
    position: np.ndarray
    velocity: np.ndarray
    frequency: float
    loudness: float
    pulse_rate: float
    objective_value: float
    accepted: int = 0


@dataclass
class Swarm:
    bats: List[Bat]
    best_position: np.ndarray
    best_value: float
    iteration: int = 0
    evaluations: int = 0


@dataclass
class OptimizationResult:
    best_position: np.ndarray
    best_value: float
    value_history: List[float]
    evaluations: int

    def __eq__(self, other):
        if not isinstance(other, OptimizationResult):
            return NotImplemented
        return (
            np.array_equal(self.best_position, other.best_position)
            and self.best_value == other.best_value
            and self.value_history == other.value_history
            and self.evaluations == other.evaluations
        )


def initialize_population(
    config: OptimizerConfig,
    space: Region,
    rng: np.random.Generator,
    objective: Optional[Objective] = None,
) -> Swarm:
    """Scatter ``population_size`` bats uniformly over ``space``.

    With an objective every bat is evaluated and the swarm best is set;
    without one the values stay at +inf.
    """
    bats = []
    for _ in range(config.population_size):
        x = np.asarray(space.sample(rng), dtype=float)
        bats.append(
            Bat(
                position=x,
                velocity=np.zeros_like(x),
                frequency=config.f_min,
                loudness=config.initial_loudness,
                pulse_rate=config.initial_pulse_rate,
                objective_value=math.inf,
            )
        )
    evaluations = 0
    if objective is not None:
        for bat in bats:
            bat.objective_value = float(objective(bat.position))
            evaluations += 1
    leader = min(bats, key=lambda b: b.objective_value)
    return Swarm(
        bats=bats,
        best_position=leader.position.copy(),
        best_value=leader.objective_value,
        evaluations=evaluations,
    )


def compute_beta(schedule: Schedule, t: int, T: int, rng: np.random.Generator) -> float:
    if isinstance(schedule, StandardBeta):
        return float(rng.random())
    r = rng.random()
    # normalized iteration keeps beta inside [0, 1]
    progress = t / T if T > 0 else 1.0
    beta = progress * math.exp(-schedule.rho * r)
    return min(max(beta, 0.0), 1.0)


def update_bat(
    bat: Bat,
    best_position: np.ndarray,
    config: OptimizerConfig,
    schedule: Schedule,
    t: int,
    T: int,
    rng: np.random.Generator,
    space: Optional[Region] = None,
) -> np.ndarray:
    """Move ``bat`` one frequency-tuned step and return the candidate position.

    Frequency and velocity are stored on the bat; the returned position is
    only a candidate, the caller decides whether the bat moves there.
    """
    best_position = np.asarray(best_position, dtype=float)
    if best_position.shape != bat.position.shape:
        raise ValueError(
            f"dimension mismatch: bat has {bat.position.shape}, best has {best_position.shape}"
        )
    beta = compute_beta(schedule, t, T, rng)
    bat.frequency = config.f_min + (config.f_max - config.f_min) * beta
    bat.velocity = bat.velocity + (bat.position - best_position) * bat.frequency
    candidate = bat.position + bat.velocity
    if space is not None:
        candidate = space.clamp(candidate)
    return candidate


def local_random_walk(
    x_base: np.ndarray,
    mean_loudness: float,
    config: OptimizerConfig,
    rng: np.random.Generator,
    space: Optional[Region] = None,
) -> np.ndarray:
    if mean_loudness < 0:
        raise ValueError(f"mean loudness must be >= 0, got {mean_loudness!r}")
    x_base = np.asarray(x_base, dtype=float)
    eps = rng.uniform(-1.0, 1.0, size=x_base.shape)
    x_new = x_base + config.sigma * eps * mean_loudness
    if space is not None:
        x_new = space.clamp(x_new)
    return x_new


def update_loudness_and_pulse(bat: Bat, config: OptimizerConfig, t: int) -> Bat:
    bat.loudness = config.alpha * bat.loudness
    bat.pulse_rate = config.initial_pulse_rate * (1.0 - math.exp(-config.gamma * t))
    bat.accepted += 1
    return bat


def step(
    swarm: Swarm,
    objective: Objective,
    config: OptimizerConfig,
    t: int,
    rng: np.random.Generator,
    space: Optional[Region] = None,
    T: Optional[int] = None,
) -> Swarm:
    """Advance every bat once (iteration ``t``, 1-based)."""
    T = config.max_iterations if T is None else T
    mean_loudness = float(np.mean([b.loudness for b in swarm.bats]))
    for bat in swarm.bats:
        candidate = update_bat(bat, swarm.best_position, config, config.schedule, t, T, rng, space)
        if rng.random() > bat.pulse_rate:
            candidate = local_random_walk(swarm.best_position, mean_loudness, config, rng, space)
        value = float(objective(candidate))
        swarm.evaluations += 1
        if rng.random() < bat.loudness and value < bat.objective_value:
            bat.position = candidate
            bat.objective_value = value
            update_loudness_and_pulse(bat, config, t)
        if value <= swarm.best_value:
            swarm.best_position = candidate.copy()
            swarm.best_value = value
    swarm.iteration = t
    return swarm


def optimize(
    objective: Objective,
    space: Region,
    config: OptimizerConfig,
    callback: Optional[Callable[[Swarm], None]] = None,
) -> OptimizationResult:
    """Minimize ``objective`` over ``space``.

    ``value_history[0]`` is the best of the initial population and
    ``value_history[t]`` the best after iteration ``t``.
    """
    rng = np.random.default_rng(config.rng_seed)
    swarm = initialize_population(config, space, rng, objective)
    history = [swarm.best_value]
    if callback is not None:
        callback(swarm)
    for t in range(1, config.max_iterations + 1):
        step(swarm, objective, config, t, rng, space)
        history.append(swarm.best_value)
        if callback is not None:
            callback(swarm)
    return OptimizationResult(
        best_position=swarm.best_position.copy(),
        best_value=swarm.best_value,
        value_history=history,
        evaluations=swarm.evaluations,
    )


def maximize(objective: Objective, space: Region, config: OptimizerConfig) -> OptimizationResult:
    """Maximize by minimizing the negated objective; values are reported un-negated."""
    result = optimize(lambda x: -objective(x), space, config)
    return OptimizationResult(
        best_position=result.best_position,
        best_value=-result.best_value,
        value_history=[-v for v in result.value_history],
        evaluations=result.evaluations,
    )


def with_seed(config: OptimizerConfig, seed: int) -> OptimizerConfig:
    return replace(config, rng_seed=seed)
