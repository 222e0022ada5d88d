"""Attitude estimators with a shared per-sample interface."""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset
from ..errors import EmptyDataset
from .complementary import CCF, LCF, NCF, AccMag, AttitudeFilter, GyroOnly
from .kalman import CKF, EKF
from .params import ARDUCOPTER, XSENS, FilterParams
from .quaternion import Madgwick, Mahony

FILTERS = {
    cls.kind: cls for cls in (LCF, NCF, CCF, CKF, EKF, Mahony, Madgwick, GyroOnly, AccMag)
}

__all__ = [
    "ARDUCOPTER",
    "AccMag",
    "AttitudeFilter",
    "CCF",
    "CKF",
    "EKF",
    "FILTERS",
    "FilterParams",
    "GyroOnly",
    "LCF",
    "Madgwick",
    "Mahony",
    "NCF",
    "XSENS",
    "make_filter",
    "run_filter",
]


def make_filter(kind: str, params: FilterParams | None = None) -> AttitudeFilter:
    try:
        cls = FILTERS[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown filter kind {kind!r}; choose from {sorted(FILTERS)}") from None
    return cls(params)


def run_filter(kind, params, dataset: Dataset, observer=None) -> np.ndarray:
    """Run one filter over a dataset and return the ``(N, 3)`` attitude track.

    ``kind`` may be a filter name or an already constructed filter. If given,
    ``observer(filt, k)`` is called after the filter has produced sample ``k``.
    """
    filt = make_filter(kind, params) if isinstance(kind, str) else kind
    n = len(dataset)
    if n == 0:
        raise EmptyDataset("dataset has no samples")
    out = np.empty((n, 3))
    samples = dataset.samples()
    out[0] = filt.initialize(next(samples))
    if observer is not None:
        observer(filt, 0)
    t = dataset.t.tolist()
    step = filt.step
    for k, sample in enumerate(samples, start=1):
        out[k] = step(sample, t[k] - t[k - 1])
        if observer is not None:
            observer(filt, k)
    return out
