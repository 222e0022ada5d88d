"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python tests/test_acceptance.py``; the summary block at the end of the
pytest output lists every criterion's outcome.
"""

import cmath
import math
import time

import numpy as np
import pytest
from conftest import ACCEPTANCE_RESULTS

from ccfilter.attitude import angle_diff_array
from ccfilter.datagen import SensorErrorModel, Static, TrajectorySpec, long_run_spec, make_dataset
from ccfilter.evalkit import average_rmse, bench_filters, evaluate, rmse
from ccfilter.filters import NCF, FilterParams, run_filter
from ccfilter.freqresp import ccf_tf, complementary_check, default_omega_grid, eval_tf, lcf_tf, ncf_tf
from ccfilter.sweep import ALPHA_SWEEP, GRID_KI, GRID_KP, SweepGrid, SweepResult, run_sweep


def record(n, ok, detail):
    ACCEPTANCE_RESULTS[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_01_complementary_identity():
    start = time.perf_counter()
    grid = default_omega_grid(1e-3, 1e3, 100)
    worst = 0.0
    for tau in (0.1, 1.0, 10.0):
        worst = max(worst, complementary_check(*lcf_tf(tau), grid))
    for kp in GRID_KP:
        for ki in GRID_KI:
            worst = max(worst, complementary_check(*ncf_tf(kp, ki), grid))
            for alpha in (0.1, 0.5, 0.7, 1.0):
                worst = max(worst, complementary_check(*ccf_tf(alpha, kp, ki), grid))
    elapsed = time.perf_counter() - start
    record(1, worst < 1e-12 and elapsed < 1.0, f"max |H+L-1| = {worst:.2e} (< 1e-12), {elapsed:.3f} s (< 1 s)")


def test_02_reduction_identities(desk_dataset):
    start = time.perf_counter()
    p = FilterParams()
    d_ncf = np.abs(run_filter("ccf", p.with_gains(alpha=1.0), desk_dataset) - run_filter("ncf", p, desk_dataset)).max()
    d_lcf = np.abs(run_filter("ccf", p.with_gains(kp=0.0, ki=0.0), desk_dataset) - run_filter("lcf", p, desk_dataset)).max()
    elapsed = time.perf_counter() - start
    ok = d_ncf <= 1e-9 and d_lcf <= 1e-9 and elapsed < 10.0
    record(2, ok, f"CCF(a=1)-NCF {d_ncf:.1e}, CCF(0,0)-LCF {d_lcf:.1e} (<= 1e-9), {elapsed:.1f} s (< 10 s)")


def test_03_parameter_insensitivity(desk_dataset):
    start = time.perf_counter()
    res = run_sweep(SweepGrid(kp_values=GRID_KP, ki_values=GRID_KI, alpha_values=(0.7,)), desk_dataset)
    elapsed = time.perf_counter() - start
    ccf, ncf = res.spread("ccf"), res.spread("ncf")
    ok = ccf < 0.10 and ncf >= 5 * ccf and res.mean("ncf") > res.mean("ccf") and elapsed < 120.0
    record(
        3,
        ok,
        f"CCF std/mean {ccf:.3f} (< 0.10), NCF std/mean {ncf:.3f} = {ncf / ccf:.2f}x CCF (>= 5x), "
        f"means NCF {res.mean('ncf'):.4f} vs CCF {res.mean('ccf'):.4f}, {elapsed:.0f} s",
    )


def test_04_alpha_insensitivity(desk_dataset):
    start = time.perf_counter()
    ratios = {}
    for kp, ki in ((25.0, 0.1), (75.0, 1.0)):
        res = run_sweep(SweepGrid(kp_values=(kp,), ki_values=(ki,), alpha_values=ALPHA_SWEEP, filters=("ccf",)), desk_dataset)
        v = res.values["ccf"]
        ratios[(kp, ki)] = v.max() / v.min()
    elapsed = time.perf_counter() - start
    ok = all(r <= 1.25 for r in ratios.values()) and elapsed < 120.0
    detail = ", ".join(f"(kp={kp:g}, ki={ki:g}) max/min {r:.3f}" for (kp, ki), r in ratios.items())
    record(4, ok, f"{detail} (<= 1.25), {elapsed:.0f} s")


def test_05_bias_convergence():
    start = time.perf_counter()
    err = SensorErrorModel(
        gyro_bias_initial=(0.05, 0.05, 0.05),
        gyro_bias_walk_std=0.0,
        gyro_noise_std=0.0,
        accel_noise_std=0.0,
        mag_noise_std=0.0,
    )
    ds = make_dataset(TrajectorySpec(duration=300.0, rate=100.0, motion=Static()), err)
    p = FilterParams(kp=25.0, ki=0.1)
    ccf_err = np.abs(angle_diff_array(ds.reference[-1], run_filter("ccf", p, ds)[-1]))
    gyro = run_filter("gyro", p, ds)
    # Euler pitch cannot leave [-pi/2, pi/2], so drift shows up on roll and yaw.
    gyro_err = np.abs(np.unwrap(angle_diff_array(ds.reference, gyro), axis=0)[-1])
    ncf = NCF(p)
    run_filter(ncf, None, ds)
    corr = np.array(ncf.correction)
    rel = np.abs(corr + 0.05) / 0.05
    elapsed = time.perf_counter() - start
    ok = ccf_err.max() < 0.005 and gyro_err.max() > 10.0 and rel.max() <= 0.10 and elapsed < 10.0
    record(
        5,
        ok,
        f"CCF error {ccf_err.max():.1e} (< 0.005), gyro-only drift {gyro_err.max():.1f} rad (> 10), "
        f"NCF KI*I {corr.mean():+.4f} = {rel.max():.0%} off -0.05 (<= 10%), {elapsed:.1f} s",
    )


def test_06_drift_plot_shape():
    start = time.perf_counter()
    ds = make_dataset(long_run_spec(seed=0))
    _, gyro = evaluate("gyro", None, ds, window=100.0, unwrap=True)
    _, ccf = evaluate("ccf", None, ds, window=100.0)
    g = np.array([np.mean(w[1]) for w in gyro.windowed])
    c = np.array([np.mean(w[1]) for w in ccf.windowed])
    dips = int(np.sum(np.diff(g) < 0))
    bound = c.max() / c[0]
    elapsed = time.perf_counter() - start
    ok = dips == 0 and bound < 5.0 and elapsed < 300.0
    record(
        6,
        ok,
        f"gyro-only windowed RMSE decreases in {dips} of {len(g) - 1} steps (need 0), "
        f"CCF max/first {bound:.2f} (< 5), {elapsed:.0f} s",
    )


def _rmse_oracle(ref, est):
    out = []
    for axis in range(ref.shape[1]):
        total = 0.0
        for r, e in zip(ref[:, axis].tolist(), est[:, axis].tolist()):
            d = math.atan2(math.sin(r - e), math.cos(r - e))
            total += d * d
        out.append(math.sqrt(total / ref.shape[0]))
    return np.array(out)


def _bode_oracle(num, den, w):
    s = complex(0.0, w)
    n = sum(c * s ** (len(num) - 1 - k) for k, c in enumerate(num))
    d = sum(c * s ** (len(den) - 1 - k) for k, c in enumerate(den))
    h = n / d
    return 10.0 * math.log10(h.real * h.real + h.imag * h.imag), math.degrees(cmath.phase(h))


def test_07_metric_oracles():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_rmse = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 500))
        ref = rng.uniform(-4, 4, (n, 3))
        est = ref + rng.normal(0, rng.uniform(0.01, 3), (n, 3))
        worst_rmse = max(worst_rmse, float(np.abs(rmse(ref, est) - _rmse_oracle(ref, est)).max()))
    worst_tf = 0.0
    for _ in range(100):
        alpha, kp, ki = rng.uniform(0.05, 1.0), 10 ** rng.uniform(-1, 2), 10 ** rng.uniform(-2, 0)
        w = 10 ** rng.uniform(-3, 3)
        for tf in ccf_tf(alpha, kp, ki):
            pt = eval_tf(tf, w)
            db, deg = _bode_oracle(tf.num, tf.den, w)
            worst_tf = max(worst_tf, abs(pt.magnitude_db - db), abs(pt.phase_deg - deg))
    elapsed = time.perf_counter() - start
    ok = worst_rmse <= 1e-12 and worst_tf <= 1e-12 and elapsed < 5.0
    record(7, ok, f"rmse {worst_rmse:.1e}, eval_tf {worst_tf:.1e} (<= 1e-12), {elapsed:.2f} s (< 5 s)")


@pytest.mark.slow
def test_08_timing_direction(desk_dataset):
    reports = {r.filter_kind: r for r in bench_filters(["ccf", "ekf", "ckf"], desk_dataset, repetitions=20)}
    c, e, k = (reports[x].mean_run_s for x in ("ccf", "ekf", "ckf"))
    record(8, c < e and c < k, f"mean run CCF {c:.3f} s, EKF {e:.3f} s, CKF {k:.3f} s over 20 repetitions")


NCF_GRID_AVERAGES = (0.042, 0.042, 0.042, 0.046, 0.046, 0.046, 0.264, 0.276, 0.383, 0.436, 1.237, 9.118)


def test_09_table_aggregation():
    cells = [(0.7, kp, ki) for kp in GRID_KP for ki in GRID_KI]
    # Each printed entry is already an average over three axes.
    per_cell = np.array([average_rmse((v, v, v)) for v in NCF_GRID_AVERAGES])
    res = SweepResult(grid=SweepGrid(filters=("ncf",)), cells=cells, values={"ncf": per_cell})
    mean, std = res.mean("ncf"), res.std("ncf")
    ok = abs(mean - 0.998) <= 0.001 and abs(std - 2.470) <= 0.001
    record(9, ok, f"mean {mean:.5f} (0.998 +- 0.001), std {std:.5f} (2.470 +- 0.001)")


def test_10_kalman_and_quaternion_health(desk_dataset):
    worst = {}

    def cov_probe(kind):
        state = {"asym": 0.0, "mineig": math.inf}

        def probe(filt, k):
            P = filt.covariance
            state["asym"] = max(state["asym"], float(np.abs(P - P.T).max()))
            state["mineig"] = min(state["mineig"], float(np.linalg.eigvalsh(P).min()))

        worst[kind] = state
        return probe

    def norm_probe(kind):
        state = {"norm": 0.0}

        def probe(filt, k):
            q = filt.q
            state["norm"] = max(state["norm"], abs(math.sqrt(sum(c * c for c in q)) - 1.0))

        worst[kind] = state
        return probe

    for kind in ("ekf", "ckf"):
        run_filter(kind, None, desk_dataset, observer=cov_probe(kind))
    for kind in ("mahony", "madgwick"):
        run_filter(kind, None, desk_dataset, observer=norm_probe(kind))
    ok = (
        all(worst[k]["asym"] <= 1e-9 and worst[k]["mineig"] >= -1e-9 for k in ("ekf", "ckf"))
        and all(worst[k]["norm"] <= 1e-9 for k in ("mahony", "madgwick"))
    )
    record(
        10,
        ok,
        ", ".join(f"{k} asym {worst[k]['asym']:.1e} min eig {worst[k]['mineig']:.1e}" for k in ("ekf", "ckf"))
        + ", "
        + ", ".join(f"{k} |q|-1 {worst[k]['norm']:.1e}" for k in ("mahony", "madgwick")),
    )


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
