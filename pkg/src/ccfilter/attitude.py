"""Euler-angle attitude kinematics and accelerometer/magnetometer attitude.

Conventions
-----------
* Attitude is (roll, pitch, yaw) in radians, ZYX order: the body-to-world
  rotation is ``Rz(yaw) @ Ry(pitch) @ Rx(roll)``.
* The world frame has +z up, so a level accelerometer at rest reads
  ``(0, 0, +g)``.
* Gyro rates (p, q, r) are body-frame angular velocities in rad/s.

Scalar functions work on plain floats with :mod:`math`; the filters call them
once per sample so they avoid numpy overhead. ``*_array`` variants operate on
``(N, 3)`` arrays.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DegenerateVector, GimbalLock

GIMBAL_EPS = 1e-6
PITCH_LIMIT = math.pi / 2 - GIMBAL_EPS
_TWO_PI = 2.0 * math.pi
_TINY = 1e-12


class Attitude(NamedTuple):
    roll: float
    pitch: float
    yaw: float


class BodyRates(NamedTuple):
    p: float
    q: float
    r: float


class Vec3(NamedTuple):
    x: float
    y: float
    z: float


def wrap_angle(x: float) -> float:
    """Wrap an angle into ``[-pi, pi)``."""
    r = (x + math.pi) % _TWO_PI - math.pi
    if r >= math.pi:
        r -= _TWO_PI
    return r


def angle_diff(a: float, b: float) -> float:
    """Shortest signed arc from ``b`` to ``a``, in ``[-pi, pi)``."""
    return wrap_angle(a - b)


def wrap_angle_array(x):
    r = np.mod(np.asarray(x, dtype=float) + np.pi, _TWO_PI) - np.pi
    return np.where(r >= np.pi, r - _TWO_PI, r)


def angle_diff_array(a, b):
    return wrap_angle_array(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))


def check_pitch(pitch: float) -> None:
    if not abs(pitch) <= PITCH_LIMIT:
        raise GimbalLock(f"pitch {pitch!r} rad is within {GIMBAL_EPS} rad of +-pi/2")


def euler_rates(att, rates) -> tuple[float, float, float]:
    """Euler angle derivatives from body rates.

    Parameters
    ----------
    att : (roll, pitch, yaw)
    rates : (p, q, r), rad/s

    Returns
    -------
    (roll_rate, pitch_rate, yaw_rate), rad/s

    Raises
    ------
    GimbalLock
        If ``|pitch| > pi/2 - GIMBAL_EPS``.
    """
    roll, pitch = att[0], att[1]
    check_pitch(pitch)
    p, q, r = rates
    sr, cr = math.sin(roll), math.cos(roll)
    cp = math.cos(pitch)
    tp = math.tan(pitch)
    qs_rc = q * sr + r * cr
    return (
        p + qs_rc * tp,
        q * cr - r * sr,
        qs_rc / cp,
    )


def body_rates(att, att_rates) -> tuple[float, float, float]:
    """Inverse of :func:`euler_rates`: body rates from Euler angle derivatives."""
    roll, pitch = att[0], att[1]
    droll, dpitch, dyaw = att_rates
    sr, cr = math.sin(roll), math.cos(roll)
    sp, cp = math.sin(pitch), math.cos(pitch)
    return (
        droll - dyaw * sp,
        dpitch * cr + dyaw * sr * cp,
        -dpitch * sr + dyaw * cr * cp,
    )


def body_rates_array(att, att_rates):
    att = np.asarray(att, dtype=float)
    d = np.asarray(att_rates, dtype=float)
    sr, cr = np.sin(att[:, 0]), np.cos(att[:, 0])
    sp, cp = np.sin(att[:, 1]), np.cos(att[:, 1])
    return np.column_stack(
        (
            d[:, 0] - d[:, 2] * sp,
            d[:, 1] * cr + d[:, 2] * sr * cp,
            -d[:, 1] * sr + d[:, 2] * cr * cp,
        )
    )


def accel_attitude(accel) -> tuple[float, float]:
    """Roll and pitch from a gravity-dominated accelerometer reading.

    Only ratios of the components enter, so any consistent unit works.
    """
    ax, ay, az = accel
    if math.hypot(ay, az) <= _TINY * max(1.0, abs(ax)):
        raise DegenerateVector(f"accelerometer vector {tuple(accel)!r} has no y/z component")
    roll = math.atan2(ay, az)
    pitch = math.atan2(-ax, ay * math.sin(roll) + az * math.cos(roll))
    return roll, pitch


def mag_yaw(mag, roll: float, pitch: float) -> float:
    """Tilt-compensated magnetic heading in ``[-pi, pi)``."""
    mx, my, mz = mag
    sr, cr = math.sin(roll), math.cos(roll)
    sp, cp = math.sin(pitch), math.cos(pitch)
    num = mz * sr - my * cr
    den = mx * cp + my * sp * sr + mz * sp * cr
    scale = math.sqrt(mx * mx + my * my + mz * mz)
    if math.hypot(num, den) <= _TINY * max(1.0, scale):
        raise DegenerateVector(f"magnetometer vector {tuple(mag)!r} has no horizontal component")
    return wrap_angle(math.atan2(num, den))


def measured_attitude(accel, mag) -> tuple[float, float, float]:
    """Accelerometer roll/pitch plus magnetometer yaw for one sample."""
    roll, pitch = accel_attitude(accel)
    return roll, pitch, mag_yaw(mag, roll, pitch)


def measured_attitude_array(accel, mag):
    """Vectorized :func:`measured_attitude` over ``(N, 3)`` arrays."""
    a = np.asarray(accel, dtype=float)
    m = np.asarray(mag, dtype=float)
    roll = np.arctan2(a[:, 1], a[:, 2])
    sr, cr = np.sin(roll), np.cos(roll)
    pitch = np.arctan2(-a[:, 0], a[:, 1] * sr + a[:, 2] * cr)
    sp, cp = np.sin(pitch), np.cos(pitch)
    num = m[:, 2] * sr - m[:, 1] * cr
    den = m[:, 0] * cp + m[:, 1] * sp * sr + m[:, 2] * sp * cr
    yaw = wrap_angle_array(np.arctan2(num, den))
    return np.column_stack((roll, pitch, yaw))


def integrate_attitude(att, rates, dt: float) -> Attitude:
    """One forward-Euler step of the Euler kinematics.

    Roll and yaw are wrapped; pitch is clamped to ``+-(pi/2 - GIMBAL_EPS)``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    dr, dp, dy = euler_rates(att, rates)
    pitch = att[1] + dt * dp
    if pitch > PITCH_LIMIT:
        pitch = PITCH_LIMIT
    elif pitch < -PITCH_LIMIT:
        pitch = -PITCH_LIMIT
    return Attitude(wrap_angle(att[0] + dt * dr), pitch, wrap_angle(att[2] + dt * dy))


def rotation_matrix(att):
    """Body-to-world rotation matrix ``Rz(yaw) Ry(pitch) Rx(roll)``."""
    roll, pitch, yaw = att
    sr, cr = math.sin(roll), math.cos(roll)
    sp, cp = math.sin(pitch), math.cos(pitch)
    sy, cy = math.sin(yaw), math.cos(yaw)
    return np.array(
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ]
    )


def rotation_matrices(att):
    """Stack of :func:`rotation_matrix` for an ``(N, 3)`` attitude track."""
    att = np.asarray(att, dtype=float)
    sr, cr = np.sin(att[:, 0]), np.cos(att[:, 0])
    sp, cp = np.sin(att[:, 1]), np.cos(att[:, 1])
    sy, cy = np.sin(att[:, 2]), np.cos(att[:, 2])
    R = np.empty((len(att), 3, 3))
    R[:, 0, 0] = cy * cp
    R[:, 0, 1] = cy * sp * sr - sy * cr
    R[:, 0, 2] = cy * sp * cr + sy * sr
    R[:, 1, 0] = sy * cp
    R[:, 1, 1] = sy * sp * sr + cy * cr
    R[:, 1, 2] = sy * sp * cr - cy * sr
    R[:, 2, 0] = -sp
    R[:, 2, 1] = cp * sr
    R[:, 2, 2] = cp * cr
    return R


def quat_from_euler(att) -> tuple[float, float, float, float]:
    """Unit quaternion (w, x, y, z) of the body-to-world rotation."""
    roll, pitch, yaw = att
    cr, sr = math.cos(roll / 2), math.sin(roll / 2)
    cp, sp = math.cos(pitch / 2), math.sin(pitch / 2)
    cy, sy = math.cos(yaw / 2), math.sin(yaw / 2)
    return (
        cr * cp * cy + sr * sp * sy,
        sr * cp * cy - cr * sp * sy,
        cr * sp * cy + sr * cp * sy,
        cr * cp * sy - sr * sp * cy,
    )


def euler_from_quat(q) -> Attitude:
    w, x, y, z = q
    roll = math.atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y))
    s = 2.0 * (w * y - z * x)
    s = 1.0 if s > 1.0 else (-1.0 if s < -1.0 else s)
    pitch = math.asin(s)
    if pitch > PITCH_LIMIT:
        pitch = PITCH_LIMIT
    elif pitch < -PITCH_LIMIT:
        pitch = -PITCH_LIMIT
    yaw = math.atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z))
    return Attitude(wrap_angle(roll), pitch, wrap_angle(yaw))
