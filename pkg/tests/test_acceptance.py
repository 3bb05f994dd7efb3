"""Acceptance gate: one test per primary criterion, each reporting PASS/FAIL."""

import math

import numpy as np
import pytest
from scipy import stats

from batnav.benchmarks import FUNCTIONS, get_function, run_trials
from batnav.cli import main
from batnav.environment import EnvironmentSpec, Obstacle, collision, preset, segment_length
from batnav.optimizer import (
    ModifiedFrequency,
    OptimizerConfig,
    SearchSpace,
    StandardBeta,
    compute_beta,
    initialize_population,
    optimize,
    step,
)
from batnav.perception import build_gap_vector, obstacle_detected
from batnav.planner import AVOID, NAVIGATE, STEP_TOL, PlannerConfig, avoidance_step, best_of_runs, run_mission

STRAIGHT = math.hypot(12.0, 12.0)


def test_criterion_1_benchmark_optima(criterion):
    with criterion(1, "benchmark optima") as notes:
        for name, f in FUNCTIONS.items():
            tol = 1e-4 if name == "michalewicz" else 1e-6
            err = abs(f(np.array(f.argmin)) - f.known_fmin)
            notes.append(f"{f.label} err {err:.1e}")
            assert err <= tol, name


def test_criterion_2_gap_vector_oracle(criterion):
    with criterion(2, "gap-vector oracle") as notes:
        for k in range(4096):
            vs = tuple((k >> (11 - i)) & 1 for i in range(12))
            brute = tuple(vs[i] | vs[(i + 1) % 12] for i in range(12))
            assert build_gap_vector(vs) == brute, vs
        worked = tuple(int(c) for c in "110000111000")
        assert build_gap_vector(worked) == tuple(int(c) for c in "110001111001")
        notes.append("4096 vectors plus worked pair")


def test_criterion_3_empty_mission(criterion):
    with criterion(3, "no-obstacle mission") as notes:
        tr = run_mission(preset("empty"), PlannerConfig(), seed=0)
        notes.append(f"length {tr.path_length:.4f} m")
        assert tr.reached and not tr.collision
        assert 16.9705 <= tr.path_length <= 16.9705 + 2 * 0.5


@pytest.mark.parametrize("algorithm", ["MFBA", "BA"])
def test_criterion_4_case1(criterion, algorithm):
    with criterion(f"4 {algorithm}", "case 1 best of 10") as notes:
        res = best_of_runs(preset("case1"), PlannerConfig(algorithm=algorithm), run_count=10, base_seed=0)
        assert res.best is not None, "no collision-free reached run"
        notes.append(f"best {res.best.path_length:.4f} m, {res.fitness_statistics.count}/10 succeeded")
        assert res.best.reached and not res.best.collision
        assert res.best.path_length <= 18.67


def test_criterion_5_case2(criterion):
    with criterion(5, "case 2 best of 10, MFBA") as notes:
        res = best_of_runs(preset("case2"), PlannerConfig(algorithm="MFBA"), run_count=10, base_seed=0)
        assert res.best is not None, "no collision-free reached run"
        notes.append(f"best {res.best.path_length:.4f} m, {res.fitness_statistics.count}/10 succeeded")
        assert res.best.reached and not res.best.collision
        assert res.best.path_length <= 19.52


@pytest.mark.slow
def test_criterion_6_mfba_trend(criterion):
    with criterion(6, "MFBA vs BA trend on six functions") as notes:
        cfg = OptimizerConfig(max_iterations=500)
        good = 0
        for name, f in FUNCTIONS.items():
            ba = run_trials(name, "BA", cfg, run_count=15, base_seed=0)
            mf = run_trials(name, "MFBA", cfg, run_count=15, base_seed=0)
            if ba.standard_deviation == 0 and mf.standard_deviation == 0:
                p = 1.0 if ba.mean == mf.mean else 0.0
            else:
                p = float(stats.ttest_ind(mf.values, ba.values, equal_var=False).pvalue)
            ok = mf.mean < ba.mean or p > 0.05
            good += ok
            notes.append(f"{f.label} {'ok' if ok else 'worse'} p={p:.2g}")
        notes.insert(0, f"{good}/6")
        assert good >= 4


def _random_env(rng):
    start = tuple(rng.uniform(0.0, 3.0, 2))
    goal = tuple(rng.uniform(9.0, 13.0, 2))
    obstacles = tuple(
        Obstacle(tuple(rng.uniform(2.0, 11.0, 2)), float(rng.uniform(0.1, 0.5)),
                 float(rng.uniform(0.0, 0.4)), float(rng.uniform(0.0, 360.0)))
        for _ in range(rng.integers(0, 6))
    )
    return EnvironmentSpec(start=start, goal=goal, obstacles=obstacles)


def test_criterion_7_invariants(criterion):
    with criterion(7, "invariant suites and 100 randomized missions") as notes:
        # optimizer invariants
        space = SearchSpace.uniform(-5.12, 5.12, 2)
        sphere = get_function("sphere")
        rng = np.random.default_rng(0)
        for schedule in (StandardBeta(), ModifiedFrequency(0.01)):
            for t in range(1, 200):
                assert 0.0 <= compute_beta(schedule, t, 199, rng) <= 1.0
            cfg = OptimizerConfig(max_iterations=150, rng_seed=3, schedule=schedule)
            r = np.random.default_rng(cfg.rng_seed)
            swarm = initialize_population(cfg, space, r, sphere)
            for t in range(1, cfg.max_iterations + 1):
                before = [b.accepted for b in swarm.bats]
                step(swarm, sphere, cfg, t, r, space)
                for bat, k0 in zip(swarm.bats, before):
                    assert cfg.f_min <= bat.frequency <= cfg.f_max
                    assert abs(bat.loudness - cfg.initial_loudness * cfg.alpha ** bat.accepted) <= 1e-12
                    if bat.accepted > k0:
                        expected = cfg.initial_pulse_rate * (1 - math.exp(-cfg.gamma * t))
                        assert abs(bat.pulse_rate - expected) <= 1e-12
            hist = optimize(sphere, space, cfg).value_history
            assert all(b <= a for a, b in zip(hist, hist[1:]))

        # mission properties
        rng = np.random.default_rng(2024)
        planner = PlannerConfig(waypoint_iterations=10, max_cycles=120)
        counts = {"reached": 0, "collision": 0, "timeout": 0}
        for k in range(100):
            env = _random_env(rng)
            tr = run_mission(env, planner, seed=k)
            recs = tr.records
            for a, b in zip(recs, recs[1:]):
                assert segment_length(a.position, b.position) <= planner.step_length + STEP_TOL
                assert b.time - a.time == env.time_step
            for rec in recs:
                assert rec.mode == (AVOID if obstacle_detected(rec.sensory_vector) else NAVIGATE)
            for a, b in zip(recs, recs[1:]):
                if a.mode == AVOID:
                    want = a.position if a.escape_bearing is None else tuple(
                        avoidance_step(a.position, a.escape_bearing, planner.step_length, env.bounds))
                    assert np.allclose(b.position, want, atol=1e-12)
            hits = [any(collision(r.position, o, r.time, env.robot_radius) for o in env.obstacles) for r in recs]
            assert tr.collision == hits[-1]
            assert not any(hits[:-1])
            counts["collision" if tr.collision else ("reached" if tr.reached else "timeout")] += 1
        notes.append(", ".join(f"{v} {k}" for k, v in counts.items()))


def test_criterion_8_determinism(criterion, tmp_path):
    with criterion(8, "byte-identical CSV outputs") as notes:
        commands = {
            "bench": ["bench", "--runs", "3"],
            "plan": ["plan", "--preset", "case2"],
            "compare": ["compare", "--preset", "case1"],
        }
        for name, argv in commands.items():
            outputs = []
            for rep in ("a", "b"):
                out = tmp_path / name / rep
                assert main(argv + ["--out", str(out)]) == 0
                outputs.append({p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))})
            assert outputs[0] and outputs[0] == outputs[1], name
            notes.append(f"{name} {len(outputs[0])} files")
