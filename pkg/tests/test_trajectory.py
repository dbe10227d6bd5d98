import math

import numpy as np
import pytest

from smclab.trajectory import (TrajectorySpec, UnreachableTargetError,
                               forward_kinematics, inverse_kinematics, jacobian,
                               reference_at)


def sinusoid(amplitude=(0.5, 0.5), frequency=(1.0, 1.0), phase=(0.0, 0.0),
             offset=(0.0, 0.0)):
    return TrajectorySpec(kind="joint-sinusoid", amplitude=amplitude,
                          frequency=frequency, phase=phase, offset=offset)


def circle_spec(cx=0.40, cy=0.10, r=0.12, n=12, segment_duration=1.0, elbow="up"):
    pts = [[cx + r * math.cos(2 * math.pi * k / n),
            cy + r * math.sin(2 * math.pi * k / n)] for k in range(n + 1)]
    return TrajectorySpec(kind="cartesian-path", waypoints=pts,
                          segment_duration=segment_duration, elbow=elbow)


def test_zero_amplitude_is_constant(params):
    spec = sinusoid(amplitude=(0.0, 0.0), offset=(0.3, -0.2))
    for t in (0.0, 0.7, 5.3):
        ref = reference_at(spec, params, t)
        assert np.array_equal(ref.q, np.array([0.3, -0.2]))
        assert np.array_equal(ref.qd, np.zeros(2))
        assert np.array_equal(ref.qdd, np.zeros(2))


def test_sinusoid_initial_velocity_is_amplitude_times_frequency(params):
    spec = sinusoid(amplitude=(0.4, 0.2), frequency=(2.0, 3.0))
    ref = reference_at(spec, params, 0.0)
    assert ref.q == pytest.approx(np.zeros(2), abs=1e-15)
    assert ref.qd == pytest.approx(np.array([0.8, 0.6]), abs=1e-15)


def test_forward_kinematics_corner_cases(params):
    l1, l2 = params.l1, params.l2
    assert forward_kinematics(params, np.zeros(2)) == pytest.approx(
        np.array([l1 + l2, 0.0]), abs=1e-15)
    assert forward_kinematics(params, np.array([np.pi / 2, 0.0])) == pytest.approx(
        np.array([0.0, l1 + l2]), abs=1e-15)
    assert forward_kinematics(params, np.array([0.0, np.pi / 2])) == pytest.approx(
        np.array([l1, l2]), abs=1e-15)


def test_ik_near_boundary_straightens_arm(params):
    q = inverse_kinematics(params, np.array([params.l1 + params.l2 - 1e-9, 0.0]))
    assert abs(q[1]) <= 1e-3
    assert abs(q[0]) <= 1e-3


def test_ik_right_angle_target_round_trip(params):
    # FK of q = (0.3, pi/2) puts the tip at radius sqrt(l1^2 + l2^2)
    target = forward_kinematics(params, np.array([0.3, np.pi / 2]))
    assert math.hypot(*target) == pytest.approx(math.hypot(params.l1, params.l2), abs=1e-15)
    q = inverse_kinematics(params, target, elbow="down")
    assert q == pytest.approx(np.array([0.3, np.pi / 2]), abs=1e-9)
    assert forward_kinematics(params, q) == pytest.approx(target, abs=1e-12)


def test_ik_branches_are_distinct_with_same_image(params):
    target = np.array([0.35, 0.20])
    q_up = inverse_kinematics(params, target, elbow="up")
    q_down = inverse_kinematics(params, target, elbow="down")
    assert not np.allclose(q_up, q_down)
    assert q_up[1] <= 0.0 <= q_down[1]
    assert forward_kinematics(params, q_up) == pytest.approx(target, abs=1e-12)
    assert forward_kinematics(params, q_down) == pytest.approx(target, abs=1e-12)


def test_ik_unreachable_raises(params):
    with pytest.raises(UnreachableTargetError):
        inverse_kinematics(params, np.array([1.0, 0.0]))
    with pytest.raises(UnreachableTargetError):
        inverse_kinematics(params, np.array([0.01, 0.0]))


def test_fk_ik_identity_random_targets(params, rng):
    lo = abs(params.l1 - params.l2) + 1e-6
    hi = params.l1 + params.l2 - 1e-6
    for _ in range(1000):
        r = rng.uniform(lo, hi)
        a = rng.uniform(-np.pi, np.pi)
        target = np.array([r * math.cos(a), r * math.sin(a)])
        for elbow in ("up", "down"):
            q = inverse_kinematics(params, target, elbow)
            assert np.max(np.abs(forward_kinematics(params, q) - target)) <= 1e-9


def test_jacobian_matches_finite_difference(params, rng):
    eps = 1e-7
    for _ in range(20):
        q = rng.uniform(-np.pi, np.pi, 2)
        J = jacobian(params, q)
        for j in range(2):
            dq = np.zeros(2)
            dq[j] = eps
            col = (forward_kinematics(params, q + dq)
                   - forward_kinematics(params, q - dq)) / (2 * eps)
            assert col == pytest.approx(J[:, j], abs=1e-6)


@pytest.mark.parametrize("make_spec", [sinusoid, circle_spec])
def test_generator_self_consistency(params, make_spec):
    # central difference of the generated position/velocity matches the
    # generated velocity/acceleration
    spec = make_spec()
    h = 1e-6
    for t in (0.31, 1.57, 2.9, 4.03):
        ref = reference_at(spec, params, t)
        plus = reference_at(spec, params, t + h)
        minus = reference_at(spec, params, t - h)
        assert (plus.q - minus.q) / (2 * h) == pytest.approx(ref.qd, abs=1e-5)
        assert (plus.qd - minus.qd) / (2 * h) == pytest.approx(ref.qdd, abs=1e-5)


def test_cartesian_reference_round_trips_through_fk(params):
    # the polyline cuts chords across the circle; the worst-case sagitta
    # for 12 segments of a 0.12 m circle is about 4.1e-3 m
    spec = circle_spec()
    for t in (0.0, 0.4, 3.7, 11.2):
        ref = reference_at(spec, params, t)
        tip = forward_kinematics(params, ref.q)
        assert math.hypot(tip[0] - 0.40, tip[1] - 0.10) == pytest.approx(0.12, abs=5e-3)


def test_cartesian_reference_hits_waypoints_exactly(params):
    spec = circle_spec()
    for i, t in ((0, 0.0), (3, 3.0), (7, 7.0)):
        ref = reference_at(spec, params, t)
        tip = forward_kinematics(params, ref.q)
        assert tip == pytest.approx(np.asarray(spec.waypoints[i]), abs=1e-9)
        assert ref.qd == pytest.approx(np.zeros(2), abs=1e-12)


def test_closed_path_wraps_periodically(params):
    spec = circle_spec(n=8, segment_duration=0.5)
    period = 8 * 0.5
    a = reference_at(spec, params, 0.3)
    b = reference_at(spec, params, 0.3 + period)
    assert a.q == pytest.approx(b.q, abs=1e-12)
    assert a.qd == pytest.approx(b.qd, abs=1e-9)


def test_open_path_holds_final_point(params):
    spec = TrajectorySpec(kind="cartesian-path",
                          waypoints=[[0.45, 0.0], [0.40, 0.15]],
                          segment_duration=1.0, elbow="up")
    end = reference_at(spec, params, 1.0)
    later = reference_at(spec, params, 5.0)
    assert np.array_equal(end.q, later.q)
    assert later.qd == pytest.approx(np.zeros(2), abs=1e-12)


def test_waypoint_validation_names_offender(params):
    spec = TrajectorySpec(kind="cartesian-path",
                          waypoints=[[0.45, 0.0], [0.9, 0.0]],
                          segment_duration=1.0)
    with pytest.raises(UnreachableTargetError, match=r"waypoints\[1\]"):
        spec.validate_waypoints(params)


def test_spec_validation(params):
    with pytest.raises(ValueError, match="kind"):
        TrajectorySpec(kind="spline")
    with pytest.raises(ValueError, match="waypoints"):
        TrajectorySpec(kind="cartesian-path", waypoints=[[0.4, 0.1]])
    with pytest.raises(ValueError, match="elbow"):
        TrajectorySpec(kind="cartesian-path", waypoints=[[0.4, 0.1], [0.42, 0.1]],
                       elbow="left")
    with pytest.raises(ValueError, match="time"):
        reference_at(TrajectorySpec(), params, -0.1)
