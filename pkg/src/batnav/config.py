"""TOML run configuration.

Every key is optional; omitted keys take the path-planning defaults
(population 5, A0 = 1, r0 = 0.5, alpha = 0.98, gamma = 0.8, f in [0, 10],
sigma = 0.3, SR = 0.8) and the environment defaults to preset ``case1``.
Unknown keys are rejected. Angles are given in degrees. Full grammar::

    [optimizer]
    population_size = 5
    f_min = 0.0
    f_max = 10.0
    alpha = 0.98
    gamma = 0.8
    sigma = 0.3
    initial_loudness = 1.0
    initial_pulse_rate = 0.5
    rho = 0.01
    epsilon = 0.001

    [planner]
    algorithm = "MFBA"          # default for single-algorithm runs
    step_length = 0.5           # m per cycle
    waypoint_iterations = 50
    max_cycles = 400
    goal_tolerance = 0.1        # m

    [sensor]
    sensor_count = 12
    sensing_range = 0.8         # m

    [bench]
    functions = ["sphere", "easom", "three_hump_camel", "booth", "rastrigin", "michalewicz"]
    iterations = 500
    dimension = 2               # sphere / rastrigin only
    runs = 15

    [run]
    algo = "both"               # ba | mfba | both
    runs = 10
    seed = 0

    [environment]
    preset = "case1"            # case1 | case2 | empty; exclusive with obstacles
    start = [0.0, 0.0]
    goal = [12.0, 12.0]
    bounds = [0.0, 0.0, 13.0, 13.0]   # x_min, y_min, x_max, y_max
    time_step = 1.0             # s per cycle
    robot_radius = 0.3          # m

    [[environment.obstacles]]
    center = [1.0, 4.5]
    radius = 0.3
    speed = 0.3                 # m/s
    heading_deg = 0.0
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
import tomli_w

from batnav.benchmarks import FUNCTIONS
from batnav.environment import PRESETS, Bounds, EnvironmentSpec, Obstacle
from batnav.optimizer import ModifiedFrequency, OptimizerConfig
from batnav.perception import SensorConfig
from batnav.planner import PlannerConfig


class ConfigError(ValueError):
    pass


ALGO_CHOICES = ("ba", "mfba", "both")


@dataclass(frozen=True)
class BenchSettings:
    functions: Tuple[str, ...] = tuple(FUNCTIONS)
    iterations: int = 500
    dimension: int = 2
    runs: int = 15


@dataclass(frozen=True)
class RunSettings:
    algo: str = "both"
    runs: int = 10
    seed: int = 0


@dataclass(frozen=True)
class Settings:
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    environment: EnvironmentSpec = field(default_factory=lambda: EnvironmentSpec(obstacles=PRESETS["case1"]))
    preset: Optional[str] = "case1"
    bench: BenchSettings = field(default_factory=BenchSettings)
    run: RunSettings = field(default_factory=RunSettings)

    @property
    def algorithms(self) -> Tuple[str, ...]:
        return ("BA", "MFBA") if self.run.algo == "both" else (self.run.algo.upper(),)


_OPTIMIZER_KEYS = ("population_size", "f_min", "f_max", "alpha", "gamma", "sigma",
                   "initial_loudness", "initial_pulse_rate", "epsilon")
_PLANNER_KEYS = ("algorithm", "step_length", "waypoint_iterations", "max_cycles", "goal_tolerance")
_SECTIONS = ("optimizer", "planner", "sensor", "bench", "run", "environment")


def _check_keys(where: str, table: Dict[str, Any], allowed) -> None:
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in [{where}]: {', '.join(unknown)}")


def _pair(where: str, value) -> Tuple[float, float]:
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ConfigError(f"{where} must be a 2-element array, got {value!r}")
    return (float(value[0]), float(value[1]))


def _build(where: str, fn, **kwargs):
    try:
        return fn(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{where}] {exc}") from None


def parse_config(data: Dict[str, Any]) -> Settings:
    _check_keys("top level", data, _SECTIONS)
    for name in _SECTIONS:
        if name in data and not isinstance(data[name], dict):
            raise ConfigError(f"[{name}] must be a table")

    opt = dict(data.get("optimizer", {}))
    _check_keys("optimizer", opt, _OPTIMIZER_KEYS + ("rho",))
    rho = opt.pop("rho", 0.01)
    schedule = _build("optimizer", ModifiedFrequency, rho=rho)
    optimizer = _build("optimizer", OptimizerConfig, schedule=schedule, **opt)

    sen = data.get("sensor", {})
    _check_keys("sensor", sen, ("sensor_count", "sensing_range"))
    sensor = _build("sensor", SensorConfig, **sen)

    pl = data.get("planner", {})
    _check_keys("planner", pl, _PLANNER_KEYS)
    planner = _build("planner", PlannerConfig, optimizer=optimizer, sensor=sensor, **pl)

    be = dict(data.get("bench", {}))
    _check_keys("bench", be, [f.name for f in fields(BenchSettings)])
    if "functions" in be:
        funcs = be["functions"]
        if not isinstance(funcs, list) or not funcs:
            raise ConfigError("[bench] functions must be a non-empty array")
        unknown = [f for f in funcs if f not in FUNCTIONS]
        if unknown:
            raise ConfigError(f"[bench] unknown function(s): {', '.join(map(str, unknown))}")
        be["functions"] = tuple(funcs)
    bench = BenchSettings(**be)
    if bench.runs < 2 or bench.iterations < 0 or bench.dimension < 1:
        raise ConfigError(f"[bench] invalid settings {bench}")

    ru = data.get("run", {})
    _check_keys("run", ru, [f.name for f in fields(RunSettings)])
    run = RunSettings(**ru)
    run = replace(run, algo=str(run.algo).lower())
    if run.algo not in ALGO_CHOICES:
        raise ConfigError(f"[run] algo must be one of {ALGO_CHOICES}, got {run.algo!r}")
    if run.runs < 1:
        raise ConfigError(f"[run] runs must be >= 1, got {run.runs}")

    env_table = dict(data.get("environment", {}))
    _check_keys("environment", env_table,
                ("preset", "start", "goal", "bounds", "time_step", "robot_radius", "obstacles"))
    preset = env_table.pop("preset", None)
    raw_obstacles = env_table.pop("obstacles", None)
    if preset is not None and raw_obstacles is not None:
        raise ConfigError("[environment] give either preset or obstacles, not both")
    if raw_obstacles is None:
        preset = preset or "case1"
        if preset not in PRESETS:
            raise ConfigError(f"[environment] unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        obstacles = PRESETS[preset]
    else:
        obstacles = tuple(_parse_obstacle(i, o) for i, o in enumerate(raw_obstacles, 1))
    env_kwargs: Dict[str, Any] = {"obstacles": obstacles}
    for key in ("start", "goal"):
        if key in env_table:
            env_kwargs[key] = _pair(f"[environment] {key}", env_table[key])
    if "bounds" in env_table:
        b = env_table["bounds"]
        if not (isinstance(b, list) and len(b) == 4):
            raise ConfigError(f"[environment] bounds must be [x_min, y_min, x_max, y_max], got {b!r}")
        env_kwargs["bounds"] = _build("environment", Bounds, **dict(zip(("x_min", "y_min", "x_max", "y_max"), map(float, b))))
    for key in ("time_step", "robot_radius"):
        if key in env_table:
            env_kwargs[key] = float(env_table[key])
    environment = _build("environment", EnvironmentSpec, **env_kwargs)

    return Settings(optimizer, planner, environment, preset, bench, run)


def _parse_obstacle(index: int, table) -> Obstacle:
    where = f"environment.obstacles #{index}"
    if not isinstance(table, dict):
        raise ConfigError(f"[{where}] must be a table")
    _check_keys(where, table, ("center", "radius", "speed", "heading_deg"))
    if "center" not in table:
        raise ConfigError(f"[{where}] center is required")
    kwargs = {"center": _pair(f"[{where}] center", table["center"])}
    for src, dst in (("radius", "radius"), ("speed", "speed"), ("heading_deg", "heading")):
        if src in table:
            kwargs[dst] = float(table[src])
    return _build(where, Obstacle, **kwargs)


def load_config(path=None) -> Settings:
    """Read a TOML file; ``None`` gives the defaults."""
    if path is None:
        return parse_config({})
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data)


def to_dict(settings: Settings) -> Dict[str, Any]:
    opt = settings.optimizer
    optimizer = {k: getattr(opt, k) for k in _OPTIMIZER_KEYS}
    optimizer["rho"] = getattr(opt.schedule, "rho", 0.01)
    pl = settings.planner
    env = settings.environment
    environment: Dict[str, Any] = {
        "start": list(env.start),
        "goal": list(env.goal),
        "bounds": [env.bounds.x_min, env.bounds.y_min, env.bounds.x_max, env.bounds.y_max],
        "time_step": env.time_step,
        "robot_radius": env.robot_radius,
    }
    if settings.preset is not None:
        environment["preset"] = settings.preset
    else:
        environment["obstacles"] = [
            {"center": list(o.center), "radius": o.radius, "speed": o.speed, "heading_deg": o.heading}
            for o in env.obstacles
        ]
    return {
        "optimizer": optimizer,
        "planner": {k: getattr(pl, k) for k in _PLANNER_KEYS},
        "sensor": {"sensor_count": pl.sensor.sensor_count, "sensing_range": pl.sensor.sensing_range},
        "bench": {
            "functions": list(settings.bench.functions),
            "iterations": settings.bench.iterations,
            "dimension": settings.bench.dimension,
            "runs": settings.bench.runs,
        },
        "run": {"algo": settings.run.algo, "runs": settings.run.runs, "seed": settings.run.seed},
        "environment": environment,
    }


def dump_config(settings: Settings) -> str:
    return tomli_w.dumps(to_dict(settings))


def save_config(settings: Settings, path) -> None:
    Path(path).write_text(dump_config(settings), encoding="utf-8")
