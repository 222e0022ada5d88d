"""Command-line harness: run, sweep, bode, synth and bench.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import dataio, freqresp
from .datagen import NOISE_FREE, RandomSmooth, SensorErrorModel, Sinusoidal, Static, TrajectorySpec, make_dataset
from .errors import DataError, NumericalError, NumericalFailure
from .evalkit import bench_filters, make_report
from .filters import ARDUCOPTER, FILTERS, XSENS, run_filter
from .sweep import ALPHA_SWEEP, GRID_KI, GRID_KP, SweepGrid, run_sweep

log = logging.getLogger("ccfilter")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3
PRESETS = {"xsens": XSENS, "arducopter": ARDUCOPTER}
MOTIONS = {"sinusoidal": Sinusoidal, "random": RandomSmooth, "static": Static}
_SYNTH_FLAGS = ("motion", "rate", "duration", "seed", "bias", "walk", "gyro_noise", "accel_noise", "mag_noise")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text, name):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{name}: cannot parse {text!r} as numbers") from None


def parse_gain(text, name):
    """``"0.7"`` -> 0.7, ``"1,2,3"`` -> (1.0, 2.0, 3.0)."""
    v = _floats(text, name)
    if len(v) == 1:
        return v[0]
    if len(v) == 3:
        return tuple(v)
    raise UsageError(f"--{name} takes one value or a roll,pitch,yaw triple")


def parse_gain_list(text, name, per_axis=False):
    """Sweep values: ``"75,25,1"``, or with ``per_axis`` ``"1,2,3;4,5,6"``."""
    if not per_axis:
        v = _floats(text, name)
        if not v:
            raise UsageError(f"--{name} is empty")
        return tuple(v)
    out = []
    for part in text.split(";"):
        v = _floats(part, name)
        if len(v) != 3:
            raise UsageError(f"--{name} with --per-axis needs ';'-separated roll,pitch,yaw triples")
        out.append(tuple(v))
    return tuple(out)


def _filter_list(text):
    kinds = [k.strip().lower() for k in text.split(",") if k.strip()]
    if kinds == ["all"]:
        kinds = list(FILTERS)
    bad = [k for k in kinds if k not in FILTERS]
    if bad or not kinds:
        raise UsageError(f"unknown filter(s) {bad}; choose from {', '.join(FILTERS)} or 'all'")
    return kinds


def _params(args):
    base = PRESETS[args.preset]
    changes = {}
    for name in ("alpha", "kp", "ki"):
        text = getattr(args, name, None)
        if text is not None:
            changes[name] = parse_gain(text, name)
    try:
        return base.with_gains(**changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_data(args):
    """Dataset from ``--dataset`` or from the synthetic generator flags."""
    synth_given = [f for f in _SYNTH_FLAGS if getattr(args, f, None) is not None]
    if getattr(args, "dataset", None) is not None:
        if synth_given or getattr(args, "noise_free", False):
            flags = ", ".join("--" + f.replace("_", "-") for f in synth_given) or "--noise-free"
            raise UsageError(f"--dataset cannot be combined with synthetic options ({flags})")
        return dataio.read_dataset(args.dataset)
    return make_dataset(_traj_spec(args), _error_model(args))


def _traj_spec(args):
    motion = MOTIONS[args.motion or "sinusoidal"]()
    return TrajectorySpec(
        duration=600.0 if args.duration is None else args.duration,
        rate=100.0 if args.rate is None else args.rate,
        motion=motion,
        seed=0 if args.seed is None else args.seed,
    )


def _error_model(args):
    err = NOISE_FREE if args.noise_free else SensorErrorModel()
    changes = {}
    if args.bias is not None:
        changes["gyro_bias_initial"] = parse_gain(args.bias, "bias")
    for flag, field_ in (
        ("walk", "gyro_bias_walk_std"),
        ("gyro_noise", "gyro_noise_std"),
        ("accel_noise", "accel_noise_std"),
        ("mag_noise", "mag_noise_std"),
    ):
        if getattr(args, flag) is not None:
            changes[field_] = getattr(args, flag)
    if changes:
        from dataclasses import replace

        err = replace(err, **changes)
    return err


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _check_finite(kind, track):
    if not np.all(np.isfinite(track)):
        raise NumericalFailure(f"{kind} produced non-finite attitude estimates")


def _plot_path(out, stem, args):
    return None if args.plots == "none" else out / f"{stem}.{args.plots}"


def cmd_run(args):
    kinds = _filter_list(args.filter)
    params = _params(args)
    ds = load_data(args)
    out = _out_dir(args)
    if args.window is not None and not args.window > 0:
        raise UsageError("--window must be positive")
    tracks, reports = {}, []
    for kind in kinds:
        track = run_filter(kind, params, ds)
        _check_finite(kind, track)
        tracks[kind] = track
        dataio.write_track(out / f"track_{kind}.csv", ds.t, track, [f"filter {kind}", _describe(params)])
        if ds.reference is not None:
            reports.append(make_report(kind, ds.reference, track, ds.t, args.window or 100.0, params, args.unwrap))
    if reports:
        dataio.write_rmse_reports(out / "rmse.csv", reports)
        dataio.write_windowed(out / "windowed_rmse.csv", reports)
        for r in reports:
            print(f"{r.filter_kind:9s} average RMSE {r.rmse_average:.6g} rad")
    if args.plots != "none":
        from . import plotting

        plotting.plot_tracks(ds.t, tracks, _plot_path(out, "tracks", args), ds.reference)
        if reports:
            plotting.plot_windowed(reports, _plot_path(out, "windowed_rmse", args))
    return EXIT_OK


def _describe(params):
    return " ".join(f"{k}={v}" for k, v in params.describe().items())


def cmd_sweep(args):
    kinds = _filter_list(args.filter)
    base = PRESETS[args.preset]
    kp = parse_gain_list(args.kp, "kp", args.per_axis) if args.kp else GRID_KP
    ki = parse_gain_list(args.ki, "ki", args.per_axis) if args.ki else GRID_KI
    if args.alpha == "sweep":
        alpha = ALPHA_SWEEP
    elif args.alpha:
        alpha = parse_gain_list(args.alpha, "alpha", args.per_axis)
    else:
        alpha = (0.7,)
    try:
        grid = SweepGrid(kp_values=kp, ki_values=ki, alpha_values=alpha, filters=tuple(kinds))
        for a, p, i in grid.cells():
            base.with_gains(alpha=a, kp=p, ki=i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ds = load_data(args)
    if ds.reference is None:
        raise DataError("sweeps need a dataset with ref_roll, ref_pitch, ref_yaw columns")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    out = _out_dir(args)
    result = run_sweep(grid, ds, base, jobs=args.jobs)
    for kind in kinds:
        if not np.all(np.isfinite(result.values[kind])):
            raise NumericalFailure(f"{kind} sweep produced non-finite RMSE")
    dataio.write_sweep(out / "sweep.csv", result)
    for kind in kinds:
        print(f"{kind:4s} mean {result.mean(kind):.6g}  std {result.std(kind):.6g}")
    if args.plots != "none":
        from . import plotting

        plotting.plot_sweep(result, _plot_path(out, "sweep", args))
    return EXIT_OK


def cmd_bode(args):
    kind = args.filter.lower()
    try:
        if kind == "lcf":
            if args.tau is not None:
                tau = args.tau
            else:
                alpha = parse_gain(args.alpha or "0.7", "alpha")
                if not np.ndim(alpha) == 0:
                    raise UsageError("bode takes a scalar --alpha")
                tau = freqresp.lcf_tau(alpha, args.rate or 100.0)
            hpf, lpf = freqresp.lcf_tf(tau)
            label = f"lcf tau={tau:g}"
        elif kind in ("ncf", "ccf"):
            kp = float(args.kp or 25.0)
            ki = float(args.ki or 0.1)
            if kind == "ncf":
                hpf, lpf = freqresp.ncf_tf(kp, ki)
                label = f"ncf kp={kp:g} ki={ki:g}"
            else:
                alpha = float(args.alpha or 0.7)
                hpf, lpf = freqresp.ccf_tf(alpha, kp, ki)
                label = f"ccf alpha={alpha:g} kp={kp:g} ki={ki:g}"
        else:
            raise UsageError("bode supports lcf, ncf and ccf")
        if not 0 < args.omega_min < args.omega_max or args.points < 2:
            raise UsageError("need 0 < --omega-min < --omega-max and --points >= 2")
        grid = freqresp.default_omega_grid(args.omega_min, args.omega_max, args.points)
        table = freqresp.bode_table(hpf, lpf, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = _out_dir(args)
    dataio.write_bode(out / f"bode_{kind}.csv", table, [label])
    print(f"{label}: max |H+L-1| = {freqresp.complementary_check(hpf, lpf, grid):.3g}")
    if args.plots != "none":
        from . import plotting

        plotting.plot_bode(table, _plot_path(out, f"bode_{kind}", args), label)
    return EXIT_OK


def cmd_synth(args):
    ds = make_dataset(_traj_spec(args), _error_model(args))
    out = _out_dir(args)
    path = dataio.write_dataset(ds, out / args.name)
    print(f"wrote {len(ds)} samples to {path}")
    return EXIT_OK


def cmd_bench(args):
    kinds = _filter_list(args.filter)
    params = _params(args)
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")
    ds = load_data(args)
    out = _out_dir(args)
    reports = bench_filters(kinds, ds, args.reps, params)
    dataio.write_timing(out / "timing.csv", reports)
    for r in reports:
        print(f"{r.filter_kind:9s} {r.mean_run_s:.4f} s/run  ({r.normalized:.3f} of slowest)")
    if args.plots != "none":
        from . import plotting

        plotting.plot_timing(reports, _plot_path(out, "timing", args))
    return EXIT_OK


def _add_source(p):
    g = p.add_argument_group("data source (a CSV file or the synthetic generator)")
    g.add_argument("--dataset", help="dataset CSV path")
    _add_synth(g)


def _add_synth(g):
    g.add_argument("--motion", choices=sorted(MOTIONS), help="synthetic motion (default sinusoidal)")
    g.add_argument("--rate", type=float, help="sample rate in Hz (default 100)")
    g.add_argument("--duration", type=float, help="duration in s (default 600)")
    g.add_argument("--seed", type=int, help="random seed (default 0)")
    g.add_argument("--bias", help="initial gyro bias, rad/s, scalar or triple")
    g.add_argument("--walk", type=float, help="gyro bias random walk, rad/s/sqrt(s)")
    g.add_argument("--gyro-noise", type=float, help="gyro white noise std, rad/s")
    g.add_argument("--accel-noise", type=float, help="accelerometer noise std")
    g.add_argument("--mag-noise", type=float, help="magnetometer noise std")
    g.add_argument("--noise-free", action="store_true", help="start from a zero-error sensor model")


def _add_common(p, default_filter, gains=True):
    p.add_argument("--filter", default=default_filter, help=f"comma-separated filter kinds (default {default_filter})")
    p.add_argument("--out", default="out", help="output directory (default ./out)")
    p.add_argument("--plots", choices=("svg", "png", "none"), default="svg", help="figure format (default svg)")
    if gains:
        p.add_argument("--alpha", help="LCF/CCF blend, scalar or roll,pitch,yaw")
        p.add_argument("--kp", help="PI proportional gain, scalar or triple")
        p.add_argument("--ki", help="PI integral gain, scalar or triple")
        p.add_argument("--preset", choices=sorted(PRESETS), default="xsens", help="Mahony/Madgwick gain preset")


def build_parser():
    parser = _Parser(prog="ccfilter", description="Complementary-filter attitude estimation toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run filters on a dataset and score them")
    _add_common(p, "ccf")
    _add_source(p)
    p.add_argument("--window", type=float, help="windowed RMSE length in s (default 100)")
    p.add_argument("--unwrap", action="store_true", help="unwrap residuals to expose drift beyond pi")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="average RMSE over a (alpha, kp, ki) grid")
    _add_common(p, "ncf,ccf")
    _add_source(p)
    p.set_defaults(func=cmd_sweep)
    p.description = (
        "Gain lists are comma-separated. With --per-axis each entry is a "
        "roll,pitch,yaw triple and entries are separated by ';'. "
        "--alpha sweep uses 0.1..0.9."
    )
    p.add_argument("--per-axis", action="store_true", help="gain entries are per-axis triples")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for grid cells")

    p = sub.add_parser("bode", help="frequency response table of a filter pair")
    p.add_argument("--filter", default="ccf", choices=("lcf", "ncf", "ccf"))
    p.add_argument("--out", default="out")
    p.add_argument("--plots", choices=("svg", "png", "none"), default="svg")
    p.add_argument("--alpha")
    p.add_argument("--kp")
    p.add_argument("--ki")
    p.add_argument("--tau", type=float, help="LCF time constant in s (overrides --alpha/--rate)")
    p.add_argument("--rate", type=float, help="sample rate used to turn LCF alpha into tau")
    p.add_argument("--omega-min", type=float, default=1e-3)
    p.add_argument("--omega-max", type=float, default=1e3)
    p.add_argument("--points", type=int, default=100)
    p.set_defaults(func=cmd_bode)

    p = sub.add_parser("synth", help="write a synthetic dataset CSV")
    p.add_argument("--out", default="out")
    p.add_argument("--name", default="dataset.csv", help="file name inside --out")
    _add_synth(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", help="time whole-dataset filter runs")
    _add_common(p, "ccf,ekf,ckf")
    _add_source(p)
    p.add_argument("--reps", type=int, default=20, help="repetitions per filter (default 20)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ccfilter: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"ccfilter: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"ccfilter: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
