"""Gain sweeps over (alpha, kp, ki) for the NCF and CCF."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .evalkit import average_rmse, rmse
from .filters import FilterParams, run_filter

GRID_KP = (75.0, 25.0, 1.0, 0.1)
GRID_KI = (0.01, 0.1, 1.0)
ALPHA_SWEEP = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass(frozen=True)
class SweepGrid:
    """Grid of gains; each value is a scalar or a per-axis triple."""

    kp_values: tuple = GRID_KP
    ki_values: tuple = GRID_KI
    alpha_values: tuple = (0.7,)
    filters: tuple = ("ncf", "ccf")

    def __post_init__(self):
        for name in ("kp_values", "ki_values", "alpha_values", "filters"):
            if len(getattr(self, name)) == 0:
                raise ValueError(f"{name} must not be empty")
        bad = set(self.filters) - {"ncf", "ccf"}
        if bad:
            raise ValueError(f"sweeps support ncf and ccf only, got {sorted(bad)}")

    def cells(self):
        return list(product(self.alpha_values, self.kp_values, self.ki_values))


@dataclass
class SweepResult:
    grid: SweepGrid
    cells: list
    # filter kind -> average RMSE per cell (same order as ``cells``)
    values: dict = field(default_factory=dict)
    per_axis: dict = field(default_factory=dict)

    def mean(self, kind) -> float:
        return float(np.mean(self.values[kind]))

    def std(self, kind) -> float:
        """Population standard deviation over the grid."""
        return float(np.std(self.values[kind]))

    def spread(self, kind) -> float:
        return self.std(kind) / self.mean(kind)


def _cell(args):
    kind, base, (alpha, kp, ki), dataset = args
    params = base.with_gains(alpha=alpha, kp=kp, ki=ki)
    per_axis = rmse(dataset.reference, run_filter(kind, params, dataset))
    return per_axis


def run_sweep(grid: SweepGrid, dataset, base: FilterParams | None = None, jobs: int = 1) -> SweepResult:
    """Average RMSE of every (filter, alpha, kp, ki) cell on one dataset.

    Cells are independent; with ``jobs > 1`` they run in worker processes
    and results are assembled in grid order.
    """
    if dataset.reference is None:
        raise ValueError("sweeps need a dataset with a reference track")
    base = base if base is not None else FilterParams()
    cells = grid.cells()
    tasks = [(kind, base, cell, dataset) for kind in grid.filters for cell in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell, tasks))
    else:
        results = [_cell(t) for t in tasks]
    res = SweepResult(grid=grid, cells=cells)
    n = len(cells)
    for i, kind in enumerate(grid.filters):
        block = results[i * n : (i + 1) * n]
        res.per_axis[kind] = np.array(block)
        res.values[kind] = np.array([average_rmse(r) for r in block])
    return res
