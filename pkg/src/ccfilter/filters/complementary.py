"""Per-axis complementary filters: LCF, NCF and the cascaded CCF.

Each filter runs three independent scalar loops over (roll, pitch, yaw).
The gyro contribution of an axis is the Euler angle rate evaluated at the
previous estimate; the low-frequency reference ``x_a`` is the accelerometer
roll/pitch and magnetometer yaw of the current sample. All ``x_a - x_hat``
terms are wrapped, so a yaw crossing +-pi does not kick the integrators.

Continuous-time loops are discretized with forward Euler at the sample
period. The LCF blend is recursive, ``x_k = a (x_{k-1} + dt w) + (1 - a) x_a``,
and the CCF's inner NCF integrates from the previous CCF output, which makes
``CCF(alpha=1) == NCF`` and ``CCF(kp=ki=0) == LCF`` hold exactly.
"""

from __future__ import annotations

import math

from ..attitude import (
    PITCH_LIMIT,
    Attitude,
    angle_diff,
    euler_rates,
    integrate_attitude,
    measured_attitude,
    wrap_angle,
)
from .params import FilterParams


def _finish(roll, pitch, yaw):
    if pitch > PITCH_LIMIT:
        pitch = PITCH_LIMIT
    elif pitch < -PITCH_LIMIT:
        pitch = -PITCH_LIMIT
    return Attitude(wrap_angle(roll), pitch, wrap_angle(yaw))


class AttitudeFilter:
    """Common state handling.

    ``initialize`` seeds the estimate from the accelerometer/magnetometer
    attitude of the first sample and returns it; ``step`` consumes one sample
    and returns the new estimate.
    """

    kind = "base"

    def __init__(self, params: FilterParams | None = None):
        self.params = params if params is not None else FilterParams()
        self.estimate: Attitude | None = None

    @property
    def initialized(self) -> bool:
        return self.estimate is not None

    def initialize(self, sample) -> Attitude:
        self.estimate = Attitude(*measured_attitude(sample.accel, sample.mag))
        self._reset()
        return self.estimate

    def _reset(self):
        pass

    def step(self, sample, dt: float) -> Attitude:
        raise NotImplementedError


class GyroOnly(AttitudeFilter):
    """Open-loop integration of the gyro rates (drifts under bias)."""

    kind = "gyro"

    def step(self, sample, dt):
        self.estimate = integrate_attitude(self.estimate, sample.gyro, dt)
        return self.estimate


class AccMag(AttitudeFilter):
    """Accelerometer roll/pitch and magnetometer yaw, no fusion."""

    kind = "accmag"

    def step(self, sample, dt):
        self.estimate = Attitude(*measured_attitude(sample.accel, sample.mag))
        return self.estimate


class _PIState(AttitudeFilter):
    def _reset(self):
        self.integral = [0.0, 0.0, 0.0]
        lim = self.params.integral_limit
        self._ilim = [lim / ki if ki > 0 else math.inf for ki in self.params.ki]

    @property
    def correction(self) -> tuple:
        """Integral correction ``ki * I`` per axis, rad/s."""
        return tuple(k * i for k, i in zip(self.params.ki, self.integral))

    @property
    def bias_estimate(self) -> tuple:
        """Gyro bias (in Euler-rate space) implied by the integral term."""
        return tuple(-c for c in self.correction)

    def _accumulate(self, i, e, dt):
        acc = self.integral[i] + dt * e
        lim = self._ilim[i]
        if acc > lim:
            acc = lim
        elif acc < -lim:
            acc = -lim
        self.integral[i] = acc
        return acc


class LCF(AttitudeFilter):
    """Linear complementary filter: fixed blend of gyro and acc/mag attitude."""

    kind = "lcf"

    def step(self, sample, dt):
        x = self.estimate
        rates = euler_rates(x, sample.gyro)
        xa = measured_attitude(sample.accel, sample.mag)
        alpha = self.params.alpha
        out = []
        for i in range(3):
            xg = x[i] + dt * rates[i]
            out.append(xg + (1.0 - alpha[i]) * angle_diff(xa[i], xg))
        self.estimate = _finish(*out)
        return self.estimate


class NCF(_PIState):
    """PI-corrected (nonlinear) complementary filter."""

    kind = "ncf"

    def step(self, sample, dt):
        x = self.estimate
        rates = euler_rates(x, sample.gyro)
        xa = measured_attitude(sample.accel, sample.mag)
        kp, ki = self.params.kp, self.params.ki
        out = []
        for i in range(3):
            e = angle_diff(xa[i], x[i])
            acc = self._accumulate(i, e, dt)
            out.append(x[i] + dt * (rates[i] + kp[i] * e + ki[i] * acc))
        self.estimate = _finish(*out)
        return self.estimate


class CCF(_PIState):
    """Cascaded complementary filter.

    A PI loop on ``x_a - x_hat`` corrects the gyro rate (inner NCF stage);
    the corrected rate is integrated from the previous output and blended
    with ``x_a`` by the outer LCF stage.
    """

    kind = "ccf"

    def step(self, sample, dt):
        x = self.estimate
        rates = euler_rates(x, sample.gyro)
        xa = measured_attitude(sample.accel, sample.mag)
        p = self.params
        kp, ki, alpha = p.kp, p.ki, p.alpha
        out = []
        for i in range(3):
            e = angle_diff(xa[i], x[i])
            acc = self._accumulate(i, e, dt)
            xg = x[i] + dt * (rates[i] + kp[i] * e + ki[i] * acc)
            out.append(xg + (1.0 - alpha[i]) * angle_diff(xa[i], xg))
        self.estimate = _finish(*out)
        return self.estimate
