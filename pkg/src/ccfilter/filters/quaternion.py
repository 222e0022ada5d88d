"""Quaternion AHRS baselines (Mahony and Madgwick MARG updates).

Quaternions are (w, x, y, z) and describe the body-to-world rotation, so the
body-frame gravity direction is the third row of the rotation matrix.
"""

from __future__ import annotations

import math

from ..attitude import Attitude, euler_from_quat, measured_attitude, quat_from_euler
from .complementary import AttitudeFilter


def _normalized(v):
    n = math.sqrt(sum(c * c for c in v))
    if n == 0.0:
        return None
    return tuple(c / n for c in v)


class _QuaternionFilter(AttitudeFilter):
    def initialize(self, sample):
        att = Attitude(*measured_attitude(sample.accel, sample.mag))
        self.q = quat_from_euler(att)
        self._reset()
        self.estimate = euler_from_quat(self.q)
        return self.estimate

    def _integrate(self, gx, gy, gz, dt, qdot_extra=(0.0, 0.0, 0.0, 0.0)):
        q0, q1, q2, q3 = self.q
        h = 0.5
        d0 = h * (-q1 * gx - q2 * gy - q3 * gz) + qdot_extra[0]
        d1 = h * (q0 * gx + q2 * gz - q3 * gy) + qdot_extra[1]
        d2 = h * (q0 * gy - q1 * gz + q3 * gx) + qdot_extra[2]
        d3 = h * (q0 * gz + q1 * gy - q2 * gx) + qdot_extra[3]
        q = (q0 + d0 * dt, q1 + d1 * dt, q2 + d2 * dt, q3 + d3 * dt)
        self.q = _normalized(q)
        self.estimate = euler_from_quat(self.q)
        return self.estimate


class Mahony(_QuaternionFilter):
    """Mahony explicit complementary filter with proportional (and optional
    integral) feedback on the cross product of measured and predicted
    gravity/field directions."""

    kind = "mahony"

    def _reset(self):
        self.integral_fb = [0.0, 0.0, 0.0]

    def step(self, sample, dt):
        gx, gy, gz = sample.gyro
        a = _normalized(sample.accel)
        if a is not None:
            q0, q1, q2, q3 = self.q
            q0q0, q0q1, q0q2, q0q3 = q0 * q0, q0 * q1, q0 * q2, q0 * q3
            q1q1, q1q2, q1q3 = q1 * q1, q1 * q2, q1 * q3
            q2q2, q2q3, q3q3 = q2 * q2, q2 * q3, q3 * q3
            ax, ay, az = a
            # Predicted gravity direction in the body frame.
            vx = 2.0 * (q1q3 - q0q2)
            vy = 2.0 * (q0q1 + q2q3)
            vz = q0q0 - q1q1 - q2q2 + q3q3
            ex = ay * vz - az * vy
            ey = az * vx - ax * vz
            ez = ax * vy - ay * vx
            m = _normalized(sample.mag)
            if m is not None:
                mx, my, mz = m
                hx = 2.0 * (mx * (0.5 - q2q2 - q3q3) + my * (q1q2 - q0q3) + mz * (q1q3 + q0q2))
                hy = 2.0 * (mx * (q1q2 + q0q3) + my * (0.5 - q1q1 - q3q3) + mz * (q2q3 - q0q1))
                bx = math.sqrt(hx * hx + hy * hy)
                bz = 2.0 * (mx * (q1q3 - q0q2) + my * (q2q3 + q0q1) + mz * (0.5 - q1q1 - q2q2))
                wx = 2.0 * (bx * (0.5 - q2q2 - q3q3) + bz * (q1q3 - q0q2))
                wy = 2.0 * (bx * (q1q2 - q0q3) + bz * (q0q1 + q2q3))
                wz = 2.0 * (bx * (q0q2 + q1q3) + bz * (0.5 - q1q1 - q2q2))
                ex += my * wz - mz * wy
                ey += mz * wx - mx * wz
                ez += mx * wy - my * wx
            ki = self.params.mahony_ki
            if ki > 0:
                fb = self.integral_fb
                fb[0] += ki * ex * dt
                fb[1] += ki * ey * dt
                fb[2] += ki * ez * dt
                gx, gy, gz = gx + fb[0], gy + fb[1], gz + fb[2]
            kp = self.params.mahony_kp
            gx, gy, gz = gx + kp * ex, gy + kp * ey, gz + kp * ez
        return self._integrate(gx, gy, gz, dt)


def madgwick_objective(q, accel, mag):
    """Residual vector of the MARG gradient-descent objective at ``q``.

    The earth-frame field reference is re-derived from ``mag`` at ``q``, as
    the filter does each update. Inputs are normalized here.
    """
    q0, q1, q2, q3 = q
    ax, ay, az = _normalized(accel)
    mx, my, mz = _normalized(mag)
    hx = 2.0 * (mx * (0.5 - q2 * q2 - q3 * q3) + my * (q1 * q2 - q0 * q3) + mz * (q1 * q3 + q0 * q2))
    hy = 2.0 * (mx * (q1 * q2 + q0 * q3) + my * (0.5 - q1 * q1 - q3 * q3) + mz * (q2 * q3 - q0 * q1))
    bx = math.sqrt(hx * hx + hy * hy)
    bz = 2.0 * (mx * (q1 * q3 - q0 * q2) + my * (q2 * q3 + q0 * q1) + mz * (0.5 - q1 * q1 - q2 * q2))
    return (
        2.0 * (q1 * q3 - q0 * q2) - ax,
        2.0 * (q0 * q1 + q2 * q3) - ay,
        2.0 * (0.5 - q1 * q1 - q2 * q2) - az,
        2.0 * bx * (0.5 - q2 * q2 - q3 * q3) + 2.0 * bz * (q1 * q3 - q0 * q2) - mx,
        2.0 * bx * (q1 * q2 - q0 * q3) + 2.0 * bz * (q0 * q1 + q2 * q3) - my,
        2.0 * bx * (q0 * q2 + q1 * q3) + 2.0 * bz * (0.5 - q1 * q1 - q2 * q2) - mz,
    )


class Madgwick(_QuaternionFilter):
    """Madgwick gradient-descent MARG filter with gain ``madgwick_beta``."""

    kind = "madgwick"

    def step(self, sample, dt):
        gx, gy, gz = sample.gyro
        a = _normalized(sample.accel)
        m = _normalized(sample.mag)
        if a is None:
            return self._integrate(gx, gy, gz, dt)
        q0, q1, q2, q3 = self.q
        ax, ay, az = a
        _2q0, _2q1, _2q2, _2q3 = 2.0 * q0, 2.0 * q1, 2.0 * q2, 2.0 * q3
        q0q0, q1q1, q2q2, q3q3 = q0 * q0, q1 * q1, q2 * q2, q3 * q3
        if m is None:
            _4q0, _4q1, _4q2 = 4.0 * q0, 4.0 * q1, 4.0 * q2
            _8q1, _8q2 = 8.0 * q1, 8.0 * q2
            s0 = _4q0 * q2q2 + _2q2 * ax + _4q0 * q1q1 - _2q1 * ay
            s1 = _4q1 * q3q3 - _2q3 * ax + 4.0 * q0q0 * q1 - _2q0 * ay - _4q1 + _8q1 * q1q1 + _8q1 * q2q2 + _4q1 * az
            s2 = 4.0 * q0q0 * q2 + _2q0 * ax + _4q2 * q3q3 - _2q3 * ay - _4q2 + _8q2 * q1q1 + _8q2 * q2q2 + _4q2 * az
            s3 = 4.0 * q1q1 * q3 - _2q1 * ax + 4.0 * q2q2 * q3 - _2q2 * ay
        else:
            mx, my, mz = m
            _2q0mx, _2q0my, _2q0mz, _2q1mx = _2q0 * mx, _2q0 * my, _2q0 * mz, _2q1 * mx
            _2q0q2, _2q2q3 = 2.0 * q0 * q2, 2.0 * q2 * q3
            q0q1, q0q2, q0q3 = q0 * q1, q0 * q2, q0 * q3
            q1q2, q1q3, q2q3 = q1 * q2, q1 * q3, q2 * q3
            # Earth-frame field reference.
            hx = mx * q0q0 - _2q0my * q3 + _2q0mz * q2 + mx * q1q1 + _2q1 * my * q2 + _2q1 * mz * q3 - mx * q2q2 - mx * q3q3
            hy = _2q0mx * q3 + my * q0q0 - _2q0mz * q1 + _2q1mx * q2 - my * q1q1 + my * q2q2 + _2q2 * mz * q3 - my * q3q3
            _2bx = math.sqrt(hx * hx + hy * hy)
            _2bz = -_2q0mx * q2 + _2q0my * q1 + mz * q0q0 + _2q1mx * q3 - mz * q1q1 + _2q2 * my * q3 - mz * q2q2 + mz * q3q3
            _4bx, _4bz = 2.0 * _2bx, 2.0 * _2bz
            fg1 = 2.0 * q1q3 - _2q0q2 - ax
            fg2 = 2.0 * q0q1 + _2q2q3 - ay
            fg3 = 1.0 - 2.0 * q1q1 - 2.0 * q2q2 - az
            fb1 = _2bx * (0.5 - q2q2 - q3q3) + _2bz * (q1q3 - q0q2) - mx
            fb2 = _2bx * (q1q2 - q0q3) + _2bz * (q0q1 + q2q3) - my
            fb3 = _2bx * (q0q2 + q1q3) + _2bz * (0.5 - q1q1 - q2q2) - mz
            s0 = -_2q2 * fg1 + _2q1 * fg2 - _2bz * q2 * fb1 + (-_2bx * q3 + _2bz * q1) * fb2 + _2bx * q2 * fb3
            s1 = _2q3 * fg1 + _2q0 * fg2 - 4.0 * q1 * fg3 + _2bz * q3 * fb1 + (_2bx * q2 + _2bz * q0) * fb2 + (_2bx * q3 - _4bz * q1) * fb3
            s2 = -_2q0 * fg1 + _2q3 * fg2 - 4.0 * q2 * fg3 + (-_4bx * q2 - _2bz * q0) * fb1 + (_2bx * q1 + _2bz * q3) * fb2 + (_2bx * q0 - _4bz * q2) * fb3
            s3 = _2q1 * fg1 + _2q2 * fg2 + (-_4bx * q3 + _2bz * q1) * fb1 + (-_2bx * q0 + _2bz * q2) * fb2 + _2bx * q1 * fb3
        s = _normalized((s0, s1, s2, s3))
        if s is None:
            return self._integrate(gx, gy, gz, dt)
        beta = self.params.madgwick_beta
        return self._integrate(gx, gy, gz, dt, tuple(-beta * c for c in s))
