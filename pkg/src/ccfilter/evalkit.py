"""Error metrics and timing for filter runs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .attitude import angle_diff_array
from .errors import EmptyTrack, LengthMismatch
from .filters import FilterParams, run_filter


def _tracks(reference, estimate):
    ref = np.atleast_2d(np.asarray(reference, dtype=float))
    est = np.atleast_2d(np.asarray(estimate, dtype=float))
    if ref.shape != est.shape:
        raise LengthMismatch(f"reference {ref.shape} and estimate {est.shape} differ")
    if ref.shape[0] == 0:
        raise EmptyTrack("tracks are empty")
    return ref, est


def residuals(reference, estimate, unwrap=False):
    """Wrapped per-sample residuals ``reference - estimate``.

    With ``unwrap=True`` the residual track is made continuous in time, which
    exposes accumulated drift beyond +-pi (used for open-loop gyro tracks).
    """
    ref, est = _tracks(reference, estimate)
    d = angle_diff_array(ref, est)
    if unwrap:
        d = np.unwrap(d, axis=0)
    return d


def rmse(reference, estimate, unwrap=False) -> np.ndarray:
    """Per-axis root mean square of the wrapped residuals."""
    d = residuals(reference, estimate, unwrap)
    return np.sqrt(np.mean(d * d, axis=0))


def average_rmse(per_axis) -> float:
    v = np.asarray(per_axis, dtype=float)
    if v.shape != (3,) or np.any(v < 0):
        raise ValueError("expected three non-negative RMSE values")
    return float((v[0] + v[1] + v[2]) / 3.0)


def windowed_rmse(t, reference, estimate, window: float = 100.0, unwrap=False):
    """RMSE over consecutive non-overlapping windows of ``window`` seconds.

    Returns a list of ``(window_start, per_axis_rmse)``. A trailing partial
    window is kept when it holds at least 10% of a full window's samples;
    the first window is always kept.
    """
    if not window > 0:
        raise ValueError("window must be positive")
    t = np.asarray(t, dtype=float)
    d = residuals(reference, estimate, unwrap)
    if len(t) != len(d):
        raise LengthMismatch("time axis and tracks differ in length")
    t0 = t[0]
    n_windows = int(np.floor((t[-1] - t0) / window)) + 1
    edges = t0 + window * np.arange(n_windows + 1)
    idx = np.searchsorted(t, edges, side="left")
    full = window * (len(t) - 1) / (t[-1] - t0) if len(t) > 1 else 1.0
    out = []
    for k in range(n_windows):
        lo, hi = idx[k], idx[k + 1]
        if hi <= lo:
            continue
        if k > 0 and k == n_windows - 1 and (hi - lo) < 0.1 * full:
            continue
        seg = d[lo:hi]
        out.append((float(edges[k]), np.sqrt(np.mean(seg * seg, axis=0))))
    return out


@dataclass
class RmseReport:
    filter_kind: str
    rmse_roll: float
    rmse_pitch: float
    rmse_yaw: float
    rmse_average: float
    windowed: list = field(default_factory=list)
    params_used: dict = field(default_factory=dict)

    @property
    def per_axis(self):
        return np.array([self.rmse_roll, self.rmse_pitch, self.rmse_yaw])


def make_report(kind, reference, estimate, t=None, window=100.0, params=None, unwrap=False) -> RmseReport:
    per_axis = rmse(reference, estimate, unwrap)
    win = windowed_rmse(t, reference, estimate, window, unwrap) if t is not None else []
    return RmseReport(
        filter_kind=kind,
        rmse_roll=float(per_axis[0]),
        rmse_pitch=float(per_axis[1]),
        rmse_yaw=float(per_axis[2]),
        rmse_average=average_rmse(per_axis),
        windowed=win,
        params_used=params.describe() if params is not None else {},
    )


def evaluate(kind, params, dataset, window=100.0, unwrap=False) -> tuple[np.ndarray, RmseReport]:
    """Run a filter and score it against the dataset's reference track."""
    if dataset.reference is None:
        raise ValueError("dataset has no reference attitude")
    params = params if params is not None else FilterParams()
    track = run_filter(kind, params, dataset)
    return track, make_report(kind, dataset.reference, track, dataset.t, window, params, unwrap)


@dataclass
class TimingReport:
    filter_kind: str
    mean_run_s: float
    mean_step_s: float
    normalized: float
    repetitions: int


def bench_filters(kinds, dataset, repetitions: int = 20, params=None, clock=time.perf_counter):
    """Average wall-clock time of whole-dataset runs, one filter at a time.

    ``normalized`` divides each mean by the slowest filter's mean.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    params = params if params is not None else FilterParams()
    means = {}
    for kind in kinds:
        total = 0.0
        for _ in range(repetitions):
            start = clock()
            run_filter(kind, params, dataset)
            total += clock() - start
        means[kind] = total / repetitions
    slowest = max(means.values())
    n = len(dataset)
    return [
        TimingReport(
            filter_kind=k,
            mean_run_s=m,
            mean_step_s=m / n,
            normalized=m / slowest if slowest > 0 else 1.0,
            repetitions=repetitions,
        )
        for k, m in means.items()
    ]
