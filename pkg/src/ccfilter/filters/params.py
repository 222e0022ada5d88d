from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


def _per_axis(value, name):
    if np.ndim(value) == 0:
        return (float(value),) * 3
    out = tuple(float(v) for v in value)
    if len(out) != 3:
        raise ValueError(f"{name} must be a scalar or 3 per-axis values, got {len(out)}")
    return out


def _diag(*values):
    return np.diag(np.asarray(values, dtype=float))


def _check_cov(mat, name, n, strict):
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (n, n):
        raise ValueError(f"{name} must be {n}x{n}, got {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError(f"{name} has non-finite entries")
    if not np.allclose(mat, mat.T, rtol=0, atol=1e-12):
        raise ValueError(f"{name} is not symmetric")
    lo = np.linalg.eigvalsh(mat).min()
    if strict and not lo > 0:
        raise ValueError(f"{name} must be positive definite (min eigenvalue {lo:g})")
    if lo < -1e-12:
        raise ValueError(f"{name} must be positive semidefinite (min eigenvalue {lo:g})")
    return mat


@dataclass(frozen=True, eq=False)
class FilterParams:
    """Gain set shared by every filter kind.

    ``alpha``, ``kp`` and ``ki`` accept a scalar (shared by all three axes)
    or a (roll, pitch, yaw) triple. Defaults (kp=25, ki=0.1,
    alpha=0.7) suit a consumer-grade MEMS IMU sampled at 100 Hz.
    """

    alpha: tuple = 0.7
    kp: tuple = 25.0
    ki: tuple = 0.1
    mahony_kp: float = 1.5
    mahony_ki: float = 0.0
    madgwick_beta: float = 0.2
    q_ekf: np.ndarray = field(default_factory=lambda: _diag(5.0, 0.05, 10.0))
    r_ekf: np.ndarray = field(default_factory=lambda: _diag(0.1, 0.001, 0.8))
    q_ckf: np.ndarray = field(default_factory=lambda: _diag(60.0, 5.0, 10.0, 0.0, 0.0, 0.0))
    r_ckf: np.ndarray = field(default_factory=lambda: _diag(0.1, 0.01, 0.8))
    p0: float = 0.1
    # |ki * integral| <= integral_limit (rad/s), per axis.
    integral_limit: float = 10.0

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "alpha", _per_axis(self.alpha, "alpha"))
        set_(self, "kp", _per_axis(self.kp, "kp"))
        set_(self, "ki", _per_axis(self.ki, "ki"))
        if not all(0.0 <= a <= 1.0 for a in self.alpha):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not all(k >= 0 for k in self.kp + self.ki):
            raise ValueError("kp and ki must be >= 0")
        if self.mahony_kp < 0 or self.mahony_ki < 0 or self.madgwick_beta < 0:
            raise ValueError("Mahony/Madgwick gains must be >= 0")
        if not self.p0 > 0:
            raise ValueError("p0 must be positive")
        if not self.integral_limit > 0:
            raise ValueError("integral_limit must be positive")
        set_(self, "q_ekf", _check_cov(self.q_ekf, "q_ekf", 3, strict=False))
        set_(self, "r_ekf", _check_cov(self.r_ekf, "r_ekf", 3, strict=True))
        set_(self, "q_ckf", _check_cov(self.q_ckf, "q_ckf", 6, strict=False))
        set_(self, "r_ckf", _check_cov(self.r_ckf, "r_ckf", 3, strict=True))

    def with_gains(self, **changes) -> "FilterParams":
        return replace(self, **changes)

    def describe(self) -> dict:
        """Flat, serializable summary of the scalar gains."""

        def fmt(v):
            return v[0] if len(set(v)) == 1 else list(v)

        return {
            "alpha": fmt(self.alpha),
            "kp": fmt(self.kp),
            "ki": fmt(self.ki),
            "mahony_kp": self.mahony_kp,
            "madgwick_beta": self.madgwick_beta,
        }


XSENS = FilterParams()
ARDUCOPTER = FilterParams(mahony_kp=100.0, madgwick_beta=10.0)
