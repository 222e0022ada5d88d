"""CSV formats: datasets, estimate tracks and report tables.

Dataset files have a header ``t,gx,gy,gz,ax,ay,az,mx,my,mz`` optionally
followed by ``ref_roll,ref_pitch,ref_yaw``. Lines starting with ``#`` are
comments. Floats are written with ``repr`` so files round-trip exactly.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .dataset import Dataset
from .errors import EmptyDataset, MissingColumn, NonMonotonicTime, ParseError

SENSOR_COLUMNS = ("t", "gx", "gy", "gz", "ax", "ay", "az", "mx", "my", "mz")
REFERENCE_COLUMNS = ("ref_roll", "ref_pitch", "ref_yaw")


def _fmt(x) -> str:
    return repr(float(x))


def write_table(path, header, rows, comments=()):
    """Write a comma-separated table; numeric cells are round-trip exact."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="\n") as f:
        for c in comments:
            f.write(f"# {c}\n")
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(c if isinstance(c, str) else _fmt(c) for c in row) + "\n")
    return path


def write_dataset(dataset: Dataset, path, comments=()):
    cols = list(SENSOR_COLUMNS)
    blocks = [dataset.t[:, None], dataset.gyro, dataset.accel, dataset.mag]
    if dataset.reference is not None:
        cols += REFERENCE_COLUMNS
        blocks.append(dataset.reference)
    data = np.hstack(blocks).tolist()
    return write_table(path, cols, data, comments)


def read_dataset(path) -> Dataset:
    """Parse and validate a dataset CSV."""
    path = Path(path)
    header = None
    rows = []
    prev_t = -math.inf
    with path.open() as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [c.strip() for c in line.split(",")]
            if header is None:
                header = fields
                missing = [c for c in SENSOR_COLUMNS if c not in header]
                if missing:
                    raise MissingColumn(f"{path}: missing column(s) {', '.join(missing)}")
                present = [c in header for c in REFERENCE_COLUMNS]
                if any(present) and not all(present):
                    absent = [c for c, p in zip(REFERENCE_COLUMNS, present) if not p]
                    raise MissingColumn(f"{path}: incomplete reference columns, missing {', '.join(absent)}")
                wanted = list(SENSOR_COLUMNS) + (list(REFERENCE_COLUMNS) if all(present) else [])
                order = [header.index(c) for c in wanted]
                continue
            if len(fields) != len(header):
                raise ParseError(
                    f"{path}: expected {len(header)} fields, found {len(fields)}", line=lineno
                )
            row = []
            for j in order:
                try:
                    v = float(fields[j])
                except ValueError:
                    raise ParseError(f"{path}: bad number {fields[j]!r} in {header[j]}", lineno, j + 1) from None
                if not math.isfinite(v):
                    raise ParseError(f"{path}: non-finite value in {header[j]}", lineno, j + 1)
                row.append(v)
            if row[0] <= prev_t:
                raise NonMonotonicTime(f"{path}: time does not increase at line {lineno}", line=lineno)
            prev_t = row[0]
            rows.append(row)
    if header is None:
        raise MissingColumn(f"{path}: no header line")
    if not rows:
        raise EmptyDataset(f"{path}: no data rows")
    data = np.array(rows)
    return Dataset(
        t=data[:, 0],
        gyro=data[:, 1:4],
        accel=data[:, 4:7],
        mag=data[:, 7:10],
        reference=data[:, 10:13] if data.shape[1] > 10 else None,
    )


def read_table(path):
    """Read a table written by :func:`write_table` as (header, list of rows)."""
    header, rows = None, []
    with Path(path).open() as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split(",")
            if header is None:
                header = cells
            else:
                rows.append(cells)
    return header, rows


def write_track(path, t, track, comments=()):
    rows = np.column_stack((t, track)).tolist()
    return write_table(path, ("t", "roll", "pitch", "yaw"), rows, comments)


def write_rmse_reports(path, reports):
    header = ("filter", "rmse_roll", "rmse_pitch", "rmse_yaw", "rmse_average")
    rows = [(r.filter_kind, r.rmse_roll, r.rmse_pitch, r.rmse_yaw, r.rmse_average) for r in reports]
    return write_table(path, header, rows)


def write_windowed(path, reports):
    header = ("filter", "window_start", "rmse_roll", "rmse_pitch", "rmse_yaw", "rmse_average")
    rows = []
    for r in reports:
        for start, per_axis in r.windowed:
            rows.append((r.filter_kind, start, *per_axis.tolist(), float(np.mean(per_axis))))
    return write_table(path, header, rows)


def write_timing(path, reports):
    header = ("filter", "mean_run_s", "mean_step_s", "normalized", "repetitions")
    rows = [(r.filter_kind, r.mean_run_s, r.mean_step_s, r.normalized, str(r.repetitions)) for r in reports]
    return write_table(path, header, rows)


def _gain_cell(v):
    v = tuple(v) if np.ndim(v) else (v,)
    if len(set(v)) == 1:
        return _fmt(v[0])
    return ";".join(_fmt(x) for x in v)


def write_sweep(path, result, comments=()):
    """Sweep table: one row per (alpha, kp, ki), one column per filter,
    then ``mean`` and ``std`` footer rows over the grid."""
    kinds = list(result.grid.filters)
    header = ["alpha", "kp", "ki"] + kinds
    rows = []
    for i, (alpha, kp, ki) in enumerate(result.cells):
        rows.append([_gain_cell(alpha), _gain_cell(kp), _gain_cell(ki)] + [float(result.values[k][i]) for k in kinds])
    rows.append(["mean", "", ""] + [result.mean(k) for k in kinds])
    rows.append(["std", "", ""] + [result.std(k) for k in kinds])
    return write_table(path, header, rows, comments)


def read_sweep(path):
    """Return (header, data rows, footer dict) of a sweep table."""
    header, rows = read_table(path)
    data = [r for r in rows if r[0] not in ("mean", "std")]
    footer = {r[0]: [float(x) for x in r[3:]] for r in rows if r[0] in ("mean", "std")}
    return header, data, footer


def write_bode(path, table, comments=()):
    from .freqresp import BODE_COLUMNS

    return write_table(path, BODE_COLUMNS, np.asarray(table).tolist(), comments)
