"""Sensor sample and dataset containers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .errors import EmptyDataset, LengthMismatch, NonMonotonicTime


class SensorSample(NamedTuple):
    """One timestamped 9-DOF reading. Vectors are ``(x, y, z)`` tuples."""

    t: float
    gyro: tuple
    accel: tuple
    mag: tuple


def _as_matrix(name, values, n):
    arr = np.asarray(values, dtype=float)
    if arr.shape != (n, 3):
        raise LengthMismatch(f"{name} has shape {arr.shape}, expected ({n}, 3)")
    return arr


@dataclass
class Dataset:
    """Time-ordered sensor samples with an optional reference attitude track.

    ``gyro_bias`` holds the true gyro bias of synthetic data; it is metadata
    for tests and is not written to CSV.
    """

    t: np.ndarray
    gyro: np.ndarray
    accel: np.ndarray
    mag: np.ndarray
    reference: Optional[np.ndarray] = None
    gyro_bias: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float).reshape(-1)
        n = len(self.t)
        if n == 0:
            raise EmptyDataset("dataset has no samples")
        self.gyro = _as_matrix("gyro", self.gyro, n)
        self.accel = _as_matrix("accel", self.accel, n)
        self.mag = _as_matrix("mag", self.mag, n)
        if self.reference is not None:
            self.reference = _as_matrix("reference", self.reference, n)
        if self.gyro_bias is not None:
            self.gyro_bias = _as_matrix("gyro_bias", self.gyro_bias, n)
        if not np.all(np.isfinite(self.t)):
            raise NonMonotonicTime("timestamps must be finite")
        steps = np.diff(self.t)
        bad = np.flatnonzero(steps <= 0)
        if bad.size:
            i = int(bad[0]) + 1
            raise NonMonotonicTime(
                f"timestamp at sample {i} ({self.t[i]!r}) does not increase", line=i
            )

    def __len__(self):
        return len(self.t)

    @property
    def rate(self) -> float:
        """Mean sample rate in Hz (0 for a single sample)."""
        if len(self.t) < 2:
            return 0.0
        return (len(self.t) - 1) / (self.t[-1] - self.t[0])

    @property
    def duration(self) -> float:
        return float(self.t[-1] - self.t[0])

    def samples(self) -> Iterator[SensorSample]:
        g = self.gyro.tolist()
        a = self.accel.tolist()
        m = self.mag.tolist()
        for i, t in enumerate(self.t.tolist()):
            yield SensorSample(t, tuple(g[i]), tuple(a[i]), tuple(m[i]))

    def sample(self, i: int) -> SensorSample:
        return SensorSample(
            float(self.t[i]),
            tuple(self.gyro[i].tolist()),
            tuple(self.accel[i].tolist()),
            tuple(self.mag[i].tolist()),
        )

    def same_as(self, other: "Dataset") -> bool:
        if not isinstance(other, Dataset):
            return False
        if (self.reference is None) != (other.reference is None):
            return False
        pairs = [(self.t, other.t), (self.gyro, other.gyro), (self.accel, other.accel), (self.mag, other.mag)]
        if self.reference is not None:
            pairs.append((self.reference, other.reference))
        return all(a.shape == b.shape and np.array_equal(a, b) for a, b in pairs)
