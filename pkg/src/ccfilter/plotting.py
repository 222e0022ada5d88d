"""Static figures for CLI reports, written next to the CSV tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

AXES = ("roll", "pitch", "yaw")

# Fixed salt and no date stamp keep SVG output byte-identical across runs.
_RC = {"svg.hashsalt": "ccfilter", "figure.dpi": 100, "font.size": 9, "axes.grid": True}


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {"Date": None} if path.suffix == ".svg" else {}
    if path.suffix == ".png":
        meta = {"Software": None}
    fig.savefig(path, metadata=meta)
    plt.close(fig)
    return path


def plot_bode(table, path, title=""):
    """Magnitude and phase of the high-pass, low-pass and summed paths."""
    table = np.asarray(table)
    w = table[:, 0]
    with plt.rc_context(_RC):
        fig, (ax_m, ax_p) = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
        for col, label, style in ((1, "high-pass", "-"), (3, "low-pass", "--"), (5, "sum", ":")):
            ax_m.semilogx(w, table[:, col], style, label=label)
            ax_p.semilogx(w, table[:, col + 1], style, label=label)
        ax_m.set_ylabel("magnitude [dB]")
        ax_p.set_ylabel("phase [deg]")
        ax_p.set_xlabel("omega [rad/s]")
        ax_m.legend(loc="lower left")
        if title:
            ax_m.set_title(title)
        fig.tight_layout()
        return _save(fig, path)


def plot_windowed(reports, path, log=True):
    """Average windowed RMSE per filter against window start time."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 3.5))
        for r in reports:
            if not r.windowed:
                continue
            t = [w[0] for w in r.windowed]
            v = [float(np.mean(w[1])) for w in r.windowed]
            ax.plot(t, v, marker=".", label=r.filter_kind)
        if log:
            ax.set_yscale("log")
        ax.set_xlabel("window start [s]")
        ax.set_ylabel("average RMSE [rad]")
        ax.legend()
        fig.tight_layout()
        return _save(fig, path)


def plot_tracks(t, tracks, path, reference=None, max_points=5000):
    """Roll, pitch and yaw of each estimate, decimated for file size."""
    t = np.asarray(t)
    step = max(1, len(t) // max_points)
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(3, 1, sharex=True, figsize=(6, 6))
        for i, ax in enumerate(axes):
            if reference is not None:
                ax.plot(t[::step], np.asarray(reference)[::step, i], "k-", lw=1.5, label="reference")
            for kind, track in tracks.items():
                ax.plot(t[::step], np.asarray(track)[::step, i], lw=0.8, label=kind)
            ax.set_ylabel(f"{AXES[i]} [rad]")
        axes[-1].set_xlabel("t [s]")
        axes[0].legend(fontsize=7, ncol=4)
        fig.tight_layout()
        return _save(fig, path)


def plot_sweep(result, path):
    """Average RMSE of each grid cell, one line per filter."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 3.5))
        x = np.arange(len(result.cells))
        for kind in result.grid.filters:
            ax.plot(x, result.values[kind], marker="o", label=kind)
        ax.set_yscale("log")
        ax.set_xticks(x)
        ax.set_xticklabels([_cell_label(c) for c in result.cells], rotation=60, ha="right", fontsize=6)
        ax.set_ylabel("average RMSE [rad]")
        ax.legend()
        fig.tight_layout()
        return _save(fig, path)


def _cell_label(cell):
    def short(v):
        v = tuple(v) if np.ndim(v) else (v,)
        return f"{v[0]:g}" if len(set(v)) == 1 else "/".join(f"{x:g}" for x in v)

    alpha, kp, ki = cell
    return f"a={short(alpha)} kp={short(kp)} ki={short(ki)}"


def plot_timing(reports, path):
    """Normalized mean run time per filter."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 3))
        kinds = [r.filter_kind for r in reports]
        ax.bar(kinds, [r.normalized for r in reports])
        ax.set_ylabel("normalized run time")
        fig.tight_layout()
        return _save(fig, path)
