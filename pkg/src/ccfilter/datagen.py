"""Synthetic ground-truth trajectories and corrupted 9-DOF sensor streams.

Trajectories are defined analytically in Euler angles; body rates are obtained
by the exact inverse of the Euler kinematics, so integrating the generated
rates reproduces the attitude up to integration error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .attitude import body_rates_array, rotation_matrices, wrap_angle_array
from .dataset import Dataset
from .errors import SpecViolation

PITCH_MARGIN = 0.1
STANDARD_GRAVITY = 9.80665


def _triple(v, name):
    if np.ndim(v) == 0:
        v = (float(v),) * 3
    v = tuple(float(x) for x in v)
    if len(v) != 3:
        raise SpecViolation(f"{name} needs 3 components, got {len(v)}")
    return v


@dataclass(frozen=True)
class Static:
    attitude: tuple = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Sinusoidal:
    """Per-axis ``offset + amplitude * sin(2 pi frequency t + phase)``."""

    amplitude: tuple = (0.3, 0.2, 0.5)
    frequency: tuple = (0.1, 0.07, 0.05)
    phase: tuple = (0.0, 0.0, 0.0)
    offset: tuple = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RandomSmooth:
    """Random knots every ``segment`` seconds joined by half-cosine blends."""

    segment: float = 5.0
    max_amplitude: float = 0.6
    offset: tuple = (0.0, 0.0, 0.0)


Motion = Union[Static, Sinusoidal, RandomSmooth]


@dataclass(frozen=True)
class TrajectorySpec:
    duration: float = 600.0
    rate: float = 100.0
    motion: Motion = field(default_factory=Sinusoidal)
    seed: int = 0

    @property
    def n_samples(self) -> int:
        return int(round(self.duration * self.rate))


@dataclass(frozen=True)
class SensorErrorModel:
    """Additive sensor errors.

    Gyro bias starts at ``gyro_bias_initial`` and follows a random walk with
    ``gyro_bias_walk_std`` rad/s per sqrt(s). Noise terms are white, per
    sample. Accelerometer output is in the unit of ``gravity_mag``;
    magnetometer output is in the unit of ``mag_field``.
    """

    gyro_bias_initial: tuple = (0.02, -0.015, 0.01)
    gyro_bias_walk_std: float = 1e-4
    gyro_noise_std: float = 0.005
    accel_noise_std: float = 0.05
    mag_noise_std: float = 0.005
    gravity_mag: float = STANDARD_GRAVITY
    mag_field: tuple = (math.cos(math.radians(60)), 0.0, -math.sin(math.radians(60)))

    def validate(self):
        for name in ("gyro_bias_walk_std", "gyro_noise_std", "accel_noise_std", "mag_noise_std"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise SpecViolation(f"{name} must be a finite value >= 0, got {v!r}")
        if not self.gravity_mag > 0:
            raise SpecViolation("gravity_mag must be positive")
        field_ = np.asarray(self.mag_field, dtype=float)
        norm = np.linalg.norm(field_)
        if field_.shape != (3,) or not norm > 0:
            raise SpecViolation("mag_field must be a non-zero 3-vector")
        if math.hypot(field_[0], field_[1]) <= 1e-9 * norm:
            raise SpecViolation("mag_field is parallel to gravity")
        return self


NOISE_FREE = SensorErrorModel(
    gyro_bias_initial=(0.0, 0.0, 0.0),
    gyro_bias_walk_std=0.0,
    gyro_noise_std=0.0,
    accel_noise_std=0.0,
    mag_noise_std=0.0,
)


class Trajectory(NamedTuple):
    t: np.ndarray
    attitude: np.ndarray
    rates: np.ndarray


def _check_pitch_bound(peak_pitch):
    limit = math.pi / 2 - PITCH_MARGIN
    if peak_pitch > limit:
        raise SpecViolation(f"motion reaches |pitch| = {peak_pitch:.4f} rad, limit is {limit:.4f}")


def gen_trajectory(spec: TrajectorySpec) -> Trajectory:
    """Sample a ground-truth attitude track and its exact body rates."""
    if not (spec.duration > 0 and spec.rate > 0):
        raise SpecViolation("duration and rate must be positive")
    n = spec.n_samples
    if n < 1:
        raise SpecViolation("trajectory would contain no samples")
    t = np.arange(n) / spec.rate
    motion = spec.motion

    if isinstance(motion, Static):
        att0 = _triple(motion.attitude, "attitude")
        _check_pitch_bound(abs(att0[1]))
        angles = np.tile(att0, (n, 1))
        d_angles = np.zeros((n, 3))
    elif isinstance(motion, Sinusoidal):
        amp = np.array(_triple(motion.amplitude, "amplitude"))
        freq = np.array(_triple(motion.frequency, "frequency"))
        phase = np.array(_triple(motion.phase, "phase"))
        offset = np.array(_triple(motion.offset, "offset"))
        _check_pitch_bound(abs(offset[1]) + abs(amp[1]))
        w = 2 * np.pi * freq
        arg = np.outer(t, w) + phase
        angles = offset + amp * np.sin(arg)
        d_angles = amp * w * np.cos(arg)
    elif isinstance(motion, RandomSmooth):
        if not motion.segment > 0:
            raise SpecViolation("segment length must be positive")
        offset = np.array(_triple(motion.offset, "offset"))
        amp = float(motion.max_amplitude)
        _check_pitch_bound(abs(offset[1]) + amp)
        rng = np.random.default_rng(spec.seed)
        n_knots = int(math.ceil(t[-1] / motion.segment)) + 2
        knots = offset + rng.uniform(-amp, amp, size=(n_knots, 3))
        seg = np.minimum((t // motion.segment).astype(int), n_knots - 2)
        u = t / motion.segment - seg
        x0, x1 = knots[seg], knots[seg + 1]
        blend = (0.5 * (1 - np.cos(np.pi * u)))[:, None]
        angles = x0 + (x1 - x0) * blend
        d_angles = (x1 - x0) * (0.5 * np.pi / motion.segment * np.sin(np.pi * u))[:, None]
    else:
        raise SpecViolation(f"unknown motion type {type(motion).__name__}")

    rates = body_rates_array(angles, d_angles)
    angles = angles.copy()
    angles[:, 0] = wrap_angle_array(angles[:, 0])
    angles[:, 2] = wrap_angle_array(angles[:, 2])
    return Trajectory(t, angles, rates)


def simulate_sensors(truth: Trajectory, err: SensorErrorModel = SensorErrorModel(), seed: int = 0) -> Dataset:
    """Corrupt a ground-truth trajectory into gyro/accel/mag measurements."""
    err.validate()
    t, att, rates = truth
    n = len(t)
    dt = 1.0 / ((n - 1) / (t[-1] - t[0])) if n > 1 else 0.0
    rng = np.random.default_rng(seed)

    steps = rng.standard_normal((n, 3))
    steps[0] = 0.0
    bias = np.asarray(_triple(err.gyro_bias_initial, "gyro_bias_initial")) + np.cumsum(
        err.gyro_bias_walk_std * math.sqrt(dt) * steps, axis=0
    )
    gyro = rates + bias + err.gyro_noise_std * rng.standard_normal((n, 3))

    R = rotation_matrices(att)
    # Body-frame vector for world vector v is R^T v.
    up = np.array([0.0, 0.0, err.gravity_mag])
    accel = np.einsum("nji,j->ni", R, up) + err.accel_noise_std * rng.standard_normal((n, 3))
    m_world = np.asarray(err.mag_field, dtype=float)
    mag = np.einsum("nji,j->ni", R, m_world) + err.mag_noise_std * rng.standard_normal((n, 3))

    return Dataset(t=t, gyro=gyro, accel=accel, mag=mag, reference=att.copy(), gyro_bias=bias)


def make_dataset(spec: TrajectorySpec, err: SensorErrorModel = SensorErrorModel(), seed=None) -> Dataset:
    """Trajectory plus sensor simulation. ``seed`` defaults to ``spec.seed``."""
    return simulate_sensors(gen_trajectory(spec), err, spec.seed if seed is None else seed)


def desk_spec(seed: int = 0, duration: float = 600.0, rate: float = 100.0) -> TrajectorySpec:
    return TrajectorySpec(duration=duration, rate=rate, motion=Sinusoidal(), seed=seed)


def long_run_spec(seed: int = 0, duration: float = 7200.0, rate: float = 100.0) -> TrajectorySpec:
    return TrajectorySpec(duration=duration, rate=rate, motion=RandomSmooth(), seed=seed)
