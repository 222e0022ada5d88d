import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccfilter.attitude import (
    GIMBAL_EPS,
    PITCH_LIMIT,
    accel_attitude,
    angle_diff,
    angle_diff_array,
    body_rates,
    check_pitch,
    euler_from_quat,
    euler_rates,
    integrate_attitude,
    mag_yaw,
    measured_attitude,
    measured_attitude_array,
    quat_from_euler,
    rotation_matrices,
    rotation_matrix,
    wrap_angle,
    wrap_angle_array,
)
from ccfilter.errors import DegenerateVector, GimbalLock

angles = st.floats(-math.pi + 1e-3, math.pi - 1e-3)
pitches = st.floats(-1.2, 1.2)
rates = st.floats(-5, 5)
FIELD = np.array([math.cos(math.radians(60)), 0.0, -math.sin(math.radians(60))])


def _rx(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])


def _ry(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])


def _rz(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])


@pytest.mark.parametrize(
    "x, expected",
    [(0.0, 0.0), (math.pi, -math.pi), (-math.pi, -math.pi), (3 * math.pi, -math.pi), (7.0, 7.0 - 2 * math.pi)],
)
def test_wrap_angle_values(x, expected):
    assert wrap_angle(x) == pytest.approx(expected, abs=1e-12)


@given(st.floats(-1e4, 1e4))
def test_wrap_angle_range_and_equivalence(x):
    w = wrap_angle(x)
    assert -math.pi <= w < math.pi
    assert math.cos(w) == pytest.approx(math.cos(x), abs=1e-9)
    assert math.sin(w) == pytest.approx(math.sin(x), abs=1e-9)
    assert wrap_angle_array(np.array([x]))[0] == pytest.approx(w, abs=1e-12)


@given(angles, angles)
def test_angle_diff_is_shortest_arc(a, b):
    d = angle_diff(a, b)
    assert abs(d) <= math.pi
    assert wrap_angle(b + d) == pytest.approx(wrap_angle(a), abs=1e-9)
    assert angle_diff_array(np.array([a]), np.array([b]))[0] == pytest.approx(d, abs=1e-12)


def test_rotation_matrix_matches_elementary_product():
    att = (0.3, -0.4, 1.1)
    expected = _rz(att[2]) @ _ry(att[1]) @ _rx(att[0])
    np.testing.assert_allclose(rotation_matrix(att), expected, atol=1e-15)
    np.testing.assert_allclose(rotation_matrices(np.array([att]))[0], expected, atol=1e-15)


@settings(max_examples=200)
@given(angles, pitches, angles)
def test_measured_attitude_inverts_sensor_model(roll, pitch, yaw):
    R = rotation_matrix((roll, pitch, yaw))
    accel = R.T @ np.array([0.0, 0.0, 9.81])
    mag = R.T @ FIELD
    r, p, y = measured_attitude(accel, mag)
    assert r == pytest.approx(roll, abs=1e-9)
    assert p == pytest.approx(pitch, abs=1e-9)
    assert angle_diff(y, yaw) == pytest.approx(0.0, abs=1e-9)
    vec = measured_attitude_array(accel[None], mag[None])[0]
    np.testing.assert_allclose(vec, (r, p, y), atol=1e-12)


def test_level_accelerometer_reads_up():
    assert accel_attitude((0.0, 0.0, 9.81)) == (0.0, 0.0)
    # Nose down by 0.2 rad: gravity appears along +x in the body frame.
    roll, pitch = accel_attitude((9.81 * math.sin(0.2), 0.0, 9.81 * math.cos(0.2)))
    assert pitch == pytest.approx(-0.2)


@pytest.mark.parametrize("accel", [(9.81, 0.0, 0.0), (0.0, 0.0, 0.0)])
def test_degenerate_accelerometer(accel):
    with pytest.raises(DegenerateVector):
        accel_attitude(accel)


def test_degenerate_magnetometer():
    with pytest.raises(DegenerateVector):
        mag_yaw((0.0, 0.0, 1.0), 0.0, 0.0)


def _euler_rates_oracle(att, w):
    roll, pitch = att[0], att[1]
    W = np.array(
        [
            [1, math.sin(roll) * math.tan(pitch), math.cos(roll) * math.tan(pitch)],
            [0, math.cos(roll), -math.sin(roll)],
            [0, math.sin(roll) / math.cos(pitch), math.cos(roll) / math.cos(pitch)],
        ]
    )
    return W @ np.asarray(w)


@given(angles, pitches, angles, rates, rates, rates)
def test_euler_rates_and_inverse(roll, pitch, yaw, p, q, r):
    att = (roll, pitch, yaw)
    d = euler_rates(att, (p, q, r))
    np.testing.assert_allclose(d, _euler_rates_oracle(att, (p, q, r)), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(body_rates(att, d), (p, q, r), atol=1e-9)


def test_euler_rates_match_rotation_derivative():
    att = np.array([0.2, 0.5, -0.7])
    w = np.array([0.3, -0.2, 0.4])
    h = 1e-6
    R = rotation_matrix(att)
    dR = (rotation_matrix(att + h * np.array(euler_rates(att, w))) - R) / h
    # R_dot = R [w]x for body rates.
    skew = np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]])
    np.testing.assert_allclose(dR, R @ skew, atol=1e-5)


@pytest.mark.parametrize("pitch", [math.pi / 2, -math.pi / 2, PITCH_LIMIT + 1e-9])
def test_gimbal_lock_raised(pitch):
    with pytest.raises(GimbalLock):
        euler_rates((0.0, pitch, 0.0), (0.1, 0.1, 0.1))


def test_clamped_pitch_is_still_valid():
    check_pitch(PITCH_LIMIT)
    att = integrate_attitude((0.0, PITCH_LIMIT - 1e-9, 0.0), (0.0, 10.0, 0.0), 0.01)
    assert att.pitch == PITCH_LIMIT
    assert GIMBAL_EPS == 1e-6


def test_integrate_wraps_yaw_and_rejects_bad_dt():
    att = integrate_attitude((0.0, 0.0, math.pi - 0.01), (0.0, 0.0, 2.0), 0.01)
    assert att.yaw == pytest.approx(-math.pi + 0.01, abs=1e-12)
    with pytest.raises(ValueError):
        integrate_attitude((0, 0, 0), (0, 0, 0), 0.0)


@settings(max_examples=200)
@given(angles, pitches, angles)
def test_quaternion_round_trip(roll, pitch, yaw):
    q = quat_from_euler((roll, pitch, yaw))
    assert sum(c * c for c in q) == pytest.approx(1.0, abs=1e-12)
    w, x, y, z = q
    Rq = np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )
    np.testing.assert_allclose(Rq, rotation_matrix((roll, pitch, yaw)), atol=1e-12)
    back = euler_from_quat(q)
    assert back.roll == pytest.approx(roll, abs=1e-7)
    assert back.pitch == pytest.approx(pitch, abs=1e-7)
    assert angle_diff(back.yaw, yaw) == pytest.approx(0.0, abs=1e-7)


G = 9.80665
S2 = G / math.sqrt(2)


@pytest.mark.parametrize(
    "att, w, expected",
    [
        ((0.0, 0.0, 0.0), (0.3, -0.2, 0.1), (0.3, -0.2, 0.1)),
        ((math.pi / 2, 0.0, 0.0), (0.0, 0.0, 1.0), (0.0, -1.0, 0.0)),
    ],
)
def test_euler_rates_examples(att, w, expected):
    np.testing.assert_allclose(euler_rates(att, w), expected, atol=1e-15)


def test_gimbal_lock_just_below_vertical():
    with pytest.raises(GimbalLock):
        euler_rates((0.0, math.pi / 2 - 1e-9, 0.0), (1.0, 2.0, 3.0))


@pytest.mark.parametrize(
    "accel, expected",
    [((0.0, 0.0, G), (0.0, 0.0)), ((0.0, S2, S2), (math.pi / 4, 0.0)), ((-S2, 0.0, S2), (0.0, math.pi / 4))],
)
def test_accel_attitude_examples(accel, expected):
    np.testing.assert_allclose(accel_attitude(accel), expected, atol=1e-15)


@pytest.mark.parametrize(
    "mag, roll, expected",
    [((1.0, 0.0, 0.0), 0.0, 0.0), ((0.0, -1.0, 0.0), 0.0, math.pi / 2), ((1.0, 0.0, 0.0), math.pi / 4, 0.0)],
)
def test_mag_yaw_examples(mag, roll, expected):
    assert mag_yaw(mag, roll, 0.0) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "a, b, expected", [(0.1, 0.05, 0.05), (math.pi - 0.01, -math.pi + 0.01, -0.02), (2.5, 2.5, 0.0)]
)
def test_angle_diff_examples(a, b, expected):
    assert angle_diff(a, b) == pytest.approx(expected, abs=1e-12)


def test_wrap_three_half_pi():
    assert wrap_angle(1.5 * math.pi) == pytest.approx(-0.5 * math.pi, abs=1e-15)


@pytest.mark.parametrize(
    "att, w, dt, expected",
    [
        ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), 0.01, (0.01, 0.0, 0.0)),
        ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0), 1.0, (0.0, 0.0, 0.0)),
        ((0.0, 0.0, math.pi - 0.005), (0.0, 0.0, 1.0), 0.01, (0.0, 0.0, -math.pi + 0.005)),
    ],
)
def test_integrate_examples(att, w, dt, expected):
    np.testing.assert_allclose(integrate_attitude(att, w, dt), expected, atol=1e-12)


@given(angles, st.floats(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3))
def test_accel_round_trip(roll, pitch):
    accel = (-G * math.sin(pitch), G * math.cos(pitch) * math.sin(roll), G * math.cos(pitch) * math.cos(roll))
    r, p = accel_attitude(accel)
    assert r == pytest.approx(roll, abs=1e-12)
    assert p == pytest.approx(pitch, abs=1e-12)
