"""Kalman-filter baselines.

``EKF``
    Three-state Euler-angle EKF. Prediction integrates the gyro rates through
    the Euler kinematics; the measurement is the accelerometer/magnetometer
    attitude observed directly (H = I).

``CKF``
    Complementary (separate-bias) Kalman filter. The attitude is integrated
    outside the filter from bias-corrected gyro rates. A six-state error
    filter ``[attitude error, bias error]`` (both "estimate minus truth")
    observes the difference between that track and the acc/mag attitude;
    its estimate is fed back into the track and the bias, then reset to zero.

Both use the Joseph form for the covariance update and re-symmetrize.
"""

from __future__ import annotations

import math

import numpy as np

from ..attitude import (
    PITCH_LIMIT,
    Attitude,
    angle_diff,
    check_pitch,
    integrate_attitude,
    measured_attitude,
    wrap_angle,
)
from ..errors import NumericalFailure
from .complementary import AttitudeFilter

_I3 = np.eye(3)
_I6 = np.eye(6)


def euler_rate_matrix(att):
    """Matrix W with ``euler_rates(att, w) == W @ w``."""
    roll, pitch = att[0], att[1]
    check_pitch(pitch)
    sr, cr = math.sin(roll), math.cos(roll)
    cp, tp = math.cos(pitch), math.tan(pitch)
    return np.array(
        [
            [1.0, sr * tp, cr * tp],
            [0.0, cr, -sr],
            [0.0, sr / cp, cr / cp],
        ]
    )


def euler_rates_jacobian(att, rates):
    """Partial derivatives of the Euler angle rates w.r.t. (roll, pitch, yaw)."""
    roll, pitch = att[0], att[1]
    check_pitch(pitch)
    _, q, r = rates
    sr, cr = math.sin(roll), math.cos(roll)
    sp, cp = math.sin(pitch), math.cos(pitch)
    tp = sp / cp
    a = q * cr - r * sr
    b = q * sr + r * cr
    return np.array(
        [
            [a * tp, b / (cp * cp), 0.0],
            [-b, 0.0, 0.0],
            [a / cp, b * sp / (cp * cp), 0.0],
        ]
    )


def joseph_update(P, K, H, R):
    """``(I - KH) P (I - KH)^T + K R K^T``, symmetrized."""
    A = np.eye(P.shape[0]) - K @ H
    P = A @ P @ A.T + K @ R @ K.T
    return 0.5 * (P + P.T)


def _check_cov(P, kind):
    d = np.diagonal(P)
    if not (np.all(np.isfinite(P)) and d.min() >= -1e-9):
        raise NumericalFailure(f"{kind} covariance lost positive semidefiniteness")


def _clamped(roll, pitch, yaw):
    pitch = min(max(pitch, -PITCH_LIMIT), PITCH_LIMIT)
    return Attitude(wrap_angle(roll), pitch, wrap_angle(yaw))


class EKF(AttitudeFilter):
    kind = "ekf"

    def _reset(self):
        self.P = self.params.p0 * np.eye(3)

    @property
    def covariance(self):
        return self.P

    def step(self, sample, dt):
        p = self.params
        x = self.estimate
        F = _I3 + dt * euler_rates_jacobian(x, sample.gyro)
        x_pred = integrate_attitude(x, sample.gyro, dt)
        P = F @ self.P @ F.T + p.q_ekf

        z = measured_attitude(sample.accel, sample.mag)
        y = np.array([angle_diff(z[i], x_pred[i]) for i in range(3)])
        S = P + p.r_ekf
        K = np.linalg.solve(S, P).T  # P S^-1, both symmetric
        dx = (K @ y).tolist()
        self.P = joseph_update(P, K, _I3, p.r_ekf)
        _check_cov(self.P, self.kind)
        self.estimate = _clamped(x_pred[0] + dx[0], x_pred[1] + dx[1], x_pred[2] + dx[2])
        return self.estimate


class CKF(AttitudeFilter):
    kind = "ckf"

    _H = np.hstack((_I3, np.zeros((3, 3))))

    def _reset(self):
        self.P = self.params.p0 * np.eye(6)
        self.bias = np.zeros(3)

    @property
    def covariance(self):
        return self.P

    @property
    def bias_estimate(self) -> tuple:
        return tuple(self.bias.tolist())

    def step(self, sample, dt):
        p = self.params
        corrected = (np.asarray(sample.gyro) - self.bias).tolist()
        track = integrate_attitude(self.estimate, corrected, dt)

        F = _I6.copy()
        F[:3, 3:] = -dt * euler_rate_matrix(track)
        P = F @ self.P @ F.T + p.q_ckf

        z = measured_attitude(sample.accel, sample.mag)
        y = np.array([angle_diff(track[i], z[i]) for i in range(3)])
        S = P[:3, :3] + p.r_ckf
        K = np.linalg.solve(S, P[:3, :]).T  # P H^T S^-1
        dx = K @ y
        self.P = joseph_update(P, K, self._H, p.r_ckf)
        _check_cov(self.P, self.kind)

        # Feedback, then the error state is implicitly reset to zero.
        self.bias = self.bias - dx[3:]
        d = dx[:3].tolist()
        self.estimate = _clamped(track[0] - d[0], track[1] - d[1], track[2] - d[2])
        return self.estimate
