import itertools
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from batnav.environment import Obstacle
from batnav.perception import (
    FULL_CIRCLE,
    SensorConfig,
    build_gap_vector,
    build_sensory_vector,
    interval_sectors,
    obstacle_detected,
    select_gap,
    tangent_interval,
)

R_ROBOT = 0.3
FIG5_VS = (1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0)
FIG5_VG = (1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1)


def at_bearing(origin, bearing, dist, radius=0.3):
    th = math.radians(bearing)
    return Obstacle((origin[0] + dist * math.cos(th), origin[1] + dist * math.sin(th)), radius)


def brute_gap(vs):
    n = len(vs)
    return tuple(1 if (vs[i] == 1 or vs[(i + 1) % n] == 1) else 0 for i in range(n))


def test_sensor_config():
    assert SensorConfig().sector_width == 30.0
    with pytest.raises(ValueError):
        SensorConfig(sensor_count=2)
    with pytest.raises(ValueError):
        SensorConfig(sensing_range=0)


def test_tangent_interval_wrapping():
    # robot radius 0.1 + obstacle 0.2 gives R = 0.3 at d = 0.6: half-angle asin(0.5) = 30 deg
    iv = tangent_interval((0.0, 0.0), Obstacle((0.6, 0.0), 0.2), 0.0, 0.1)
    assert iv.start == pytest.approx(330.0)
    assert iv.width == pytest.approx(60.0)
    assert iv.end == pytest.approx(30.0)
    assert interval_sectors(iv) == (1,) + (0,) * 10 + (1,)


def test_tangent_interval_out_of_range():
    o = Obstacle((2.0, 0.0), 0.3)
    # d - R = 2 - 0.6 = 1.4 > 0.8
    assert tangent_interval((0.0, 0.0), o, 0.0, R_ROBOT, 0.8) is None
    assert tangent_interval((0.0, 0.0), o, 0.0, R_ROBOT, 1.4) is not None


def test_tangent_interval_inside_disc():
    assert tangent_interval((0.0, 0.0), Obstacle((0.2, 0.0), 0.3), 0.0, R_ROBOT) is FULL_CIRCLE


def test_point_obstacle_limit():
    o = at_bearing((0.0, 0.0), 100.0, 0.5, 1e-13)
    iv = tangent_interval((0.0, 0.0), o, 0.0, 1e-13)
    assert iv.width < 1e-9
    assert iv.start == pytest.approx(100.0)
    assert interval_sectors(iv) == (0, 0, 0, 1) + (0,) * 8


@given(d1=st.floats(0.61, 1.4), d2=st.floats(0.61, 1.4))
def test_interval_width_non_increasing_in_distance(d1, d2):
    assume(d1 < d2)
    w1 = tangent_interval((0, 0), Obstacle((d1, 0.0)), 0.0, R_ROBOT).width
    w2 = tangent_interval((0, 0), Obstacle((d2, 0.0)), 0.0, R_ROBOT).width
    assert w1 >= w2


def fig5_scene(robot=(5.0, 5.0)):
    # half-angle asin(0.6 / 1.3) = 27.5 deg: 30 deg -> sectors 1-2, 210 -> 7-8, 240 -> 8-9
    return [at_bearing(robot, 30, 1.3), at_bearing(robot, 210, 1.3), at_bearing(robot, 240, 1.3)]


def test_fig5_sensory_vector():
    vs = build_sensory_vector((5.0, 5.0), fig5_scene(), 0.0, SensorConfig(), R_ROBOT)
    assert vs == FIG5_VS
    assert obstacle_detected(vs)


def test_empty_scene():
    far = [Obstacle((10.0, 10.0))]
    assert build_sensory_vector((0.0, 0.0), far, 0.0) == (0,) * 12
    assert not obstacle_detected((0,) * 12)
    assert obstacle_detected((0,) * 5 + (1,) + (0,) * 6)


def test_sensory_vector_is_union():
    scene = fig5_scene()
    total = build_sensory_vector((5.0, 5.0), scene, 0.0)
    parts = [build_sensory_vector((5.0, 5.0), [o], 0.0) for o in scene]
    assert total == tuple(int(any(bits)) for bits in zip(*parts))


def test_gap_vector_worked_example():
    assert build_gap_vector(FIG5_VS) == FIG5_VG
    assert build_gap_vector((0,) * 12) == (0,) * 12
    assert build_gap_vector((1,) * 12) == (1,) * 12


def test_gap_vector_exhaustive():
    for vs in itertools.product((0, 1), repeat=12):
        vg = build_gap_vector(vs)
        assert vg == brute_gap(vs)
        for i in range(12):
            if vg[i] == 0:
                assert vs[i] == 0 and vs[(i + 1) % 12] == 0


def test_select_gap_all_free_tie():
    # goal at 45 deg: 30 and 60 are equidistant, index 1 (30 deg) wins
    assert select_gap((0,) * 12, (0.0, 0.0), (1.0, 1.0)) == 30.0


def test_select_gap_worked_example():
    assert select_gap(FIG5_VG, (0.0, 0.0), (1.0, 1.0)) == 90.0


def test_select_gap_blocked():
    assert select_gap((1,) * 12, (0.0, 0.0), (1.0, 1.0)) is None


def test_select_gap_last_bit_maps_to_zero():
    vg = (1,) * 11 + (0,)
    assert select_gap(vg, (0.0, 0.0), (-1.0, 0.0)) == 0.0


@given(
    obstacles=st.lists(
        st.tuples(st.floats(0, 360), st.floats(0.65, 1.35), st.floats(0.05, 0.4)), min_size=1, max_size=4
    ),
    goal_bearing=st.floats(0, 360),
    k=st.integers(1, 11),
)
def test_rotation_equivariance(obstacles, goal_bearing, k):
    robot = (5.0, 5.0)

    def scene(shift):
        obs = [at_bearing(robot, b + shift, d, r) for b, d, r in obstacles]
        g = math.radians(goal_bearing + shift)
        goal = (robot[0] + 3 * math.cos(g), robot[1] + 3 * math.sin(g))
        return obs, goal

    obs0, goal0 = scene(0)
    obsk, goalk = scene(30 * k)
    vs0 = build_sensory_vector(robot, obs0, 0.0, SensorConfig(), 0.3)
    vsk = build_sensory_vector(robot, obsk, 0.0, SensorConfig(), 0.3)
    # skip scenes where a tangent lands within float noise of a sector edge
    edges = []
    for b, d, r in obstacles:
        half = math.degrees(math.asin(min(1.0, (r + 0.3) / d)))
        edges += [(b - half) % 30, (b + half) % 30]
    assume(all(min(e, 30 - e) > 1e-6 for e in edges))
    assert vsk == vs0[-k:] + vs0[:-k]
    vg0, vgk = build_gap_vector(vs0), build_gap_vector(vsk)
    assert vgk == vg0[-k:] + vg0[:-k]
    # bearings to two free gaps equidistant from the goal may swap on rotation
    assume(min(goal_bearing % 30, 30 - goal_bearing % 30) > 1e-6)
    assume(abs((goal_bearing % 30) - 15) > 1e-6)
    s0, sk = select_gap(vg0, robot, goal0), select_gap(vgk, robot, goalk)
    if s0 is None:
        assert sk is None
    else:
        assert sk == pytest.approx((s0 + 30 * k) % 360, abs=1e-9) or (
            abs(sk - (s0 + 30 * k) % 360) == pytest.approx(360, abs=1e-9)
        )
