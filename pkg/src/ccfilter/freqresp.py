"""Continuous-time transfer functions of the complementary filters.

Every filter splits into a high-pass path applied to the integrated gyro
signal and a low-pass path applied to the acc/mag attitude; the two share a
denominator and sum to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


def _trim(coeffs):
    c = [float(x) for x in coeffs]
    while len(c) > 1 and c[0] == 0.0:
        c.pop(0)
    return tuple(c)


def _padded(a, n):
    return (0.0,) * (n - len(a)) + tuple(a)


@dataclass(frozen=True)
class RationalTf:
    """``num(s) / den(s)`` with coefficients in descending powers of s."""

    num: tuple
    den: tuple

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if den[0] == 0.0:
            raise ValueError("denominator is identically zero")
        if len(num) > len(den):
            raise ValueError("transfer function must be proper (deg num <= deg den)")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, s):
        return np.polyval(self.num, s) / np.polyval(self.den, s)

    def __add__(self, other: "RationalTf") -> "RationalTf":
        if self.den == other.den:
            n = len(self.den)
            a, b = _padded(self.num, n), _padded(other.num, n)
            return RationalTf(tuple(x + y for x, y in zip(a, b)), self.den)
        num = np.polyadd(np.polymul(self.num, other.den), np.polymul(other.num, self.den))
        return RationalTf(tuple(num), tuple(np.polymul(self.den, other.den)))

    def is_unity(self, tol=0.0) -> bool:
        """True when num and den agree coefficient by coefficient."""
        n = max(len(self.num), len(self.den))
        a, b = _padded(self.num, n), _padded(self.den, n)
        return all(abs(x - y) <= tol * max(1.0, abs(y)) for x, y in zip(a, b))


class BodePoint(NamedTuple):
    omega: float
    magnitude_db: float
    phase_deg: float


def lcf_tf(tau: float):
    """High/low-pass pair ``tau s / (1 + tau s)`` and ``1 / (1 + tau s)``."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    den = (tau, 1.0)
    return RationalTf((tau, 0.0), den), RationalTf((1.0,), den)


def ncf_tf(kp: float, ki: float):
    """``s^2 / (s^2 + kp s + ki)`` and ``(kp s + ki) / (s^2 + kp s + ki)``."""
    if kp < 0 or ki < 0 or (kp == 0 and ki == 0):
        raise ValueError("need kp >= 0, ki >= 0 and not both zero")
    den = (1.0, float(kp), float(ki))
    return RationalTf((1.0, 0.0, 0.0), den), RationalTf((0.0, float(kp), float(ki)), den)


def ccf_tf(alpha: float, kp: float, ki: float):
    """Cascaded filter pair with ``alpha`` scaling the PI gains.

    High-pass: ``alpha s^2 / D``; low-pass: ``((1 - alpha) s^2 + alpha kp s +
    alpha ki) / D`` with ``D = s^2 + alpha kp s + alpha ki``.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if kp < 0 or ki < 0:
        raise ValueError("gains must be >= 0")
    akp, aki = alpha * kp, alpha * ki
    den = (1.0, akp, aki)
    return (
        RationalTf((alpha, 0.0, 0.0), den),
        RationalTf((1.0 - alpha, akp, aki), den),
    )


def lcf_tau(alpha: float, rate: float) -> float:
    """Time constant equivalent to the per-sample LCF blend ``alpha``."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1) for a finite time constant")
    return alpha / ((1.0 - alpha) * rate)


def to_db(mag):
    return 20.0 * np.log10(mag)


def _phase_deg(z):
    ph = np.degrees(np.angle(z))
    # np.angle is in (-180, 180] already; -0.0 is folded to 0.
    return ph + 0.0


def eval_tf(tf: RationalTf, omega: float) -> BodePoint:
    if not omega > 0:
        raise ValueError("omega must be positive")
    h = complex(tf(1j * omega))
    return BodePoint(float(omega), float(to_db(abs(h))), float(_phase_deg(h)))


def default_omega_grid(lo=1e-3, hi=1e3, points=100):
    return np.logspace(math.log10(lo), math.log10(hi), points)


def complementary_check(hpf: RationalTf, lpf: RationalTf, omega_grid=None) -> float:
    """Largest ``|H(jw) + L(jw) - 1|`` over the grid."""
    w = default_omega_grid() if omega_grid is None else np.asarray(omega_grid, dtype=float)
    s = 1j * w
    return float(np.max(np.abs(hpf(s) + lpf(s) - 1.0)))


BODE_COLUMNS = (
    "omega",
    "hpf_db",
    "hpf_deg",
    "lpf_db",
    "lpf_deg",
    "sum_db",
    "sum_deg",
)


def bode_table(hpf: RationalTf, lpf: RationalTf, omega_grid=None) -> np.ndarray:
    """Rows of :data:`BODE_COLUMNS` for each frequency."""
    w = default_omega_grid() if omega_grid is None else np.asarray(omega_grid, dtype=float)
    if np.any(w <= 0):
        raise ValueError("frequencies must be positive")
    s = 1j * w
    h, lo = hpf(s), lpf(s)
    tot = h + lo
    return np.column_stack(
        (
            w,
            to_db(np.abs(h)),
            _phase_deg(h),
            to_db(np.abs(lo)),
            _phase_deg(lo),
            to_db(np.abs(tot)),
            _phase_deg(tot),
        )
    )
