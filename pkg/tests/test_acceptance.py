"""Acceptance criteria 1-14.

Each test prints one ``[PASS]``/``[FAIL]`` line; the lines are also collected
into the pytest terminal summary.  Run standalone with
``python3 tests/test_acceptance.py``.
"""
import time

import numpy as np

from pathcross import PsiSpec, ProcessSpec, simulate, tv
from pathcross.convergence import (estimate_C, l1_counterexample, resolution_floor,
                                   tv_scaling_curve, weak_convergence_experiment)
from pathcross.crossings import banach_vitali_check, indicatrix_integral
from pathcross.lebesgue import mean_psi_variation, pvar_along_lebesgue
from pathcross.simulators import (ExampleSpec, cantor_function, closed_form_tv, example_path,
                                  gap_left_ends, gap_levels, k_n_count, rng_for, scaling_ks,
                                  simulate_values)
from pathcross.variation import tv_oracle_grid
from pathcross.verify import random_path, random_walk, skorohod_suite

RESULTS = []


def report(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} | {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_01_oracle_equivalence():
    rng = rng_for(101)
    cs = np.round(np.arange(41) * 0.05, 10)
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(1000):
        p = random_path(rng, 64)
        for c, ref in zip(cs, tv_oracle_grid(p, cs)):
            fast = tv(p, c)
            worst = max(worst, abs(fast.utv - ref.utv), abs(fast.dtv - ref.dtv))
    dt = time.perf_counter() - t0
    report(1, "single pass tv = partition DP oracle", worst <= 1e-12 and dt < 10,
           f"worst abs err {worst:.2e} (tol 1e-12), {dt:.1f}s (< 10s)")


def test_02_banach_indicatrix():
    rng = rng_for(102)
    worst = 0.0
    t0 = time.perf_counter()
    for i in range(200):
        p = random_walk(rng, 512, "step" if i % 2 else "linear")
        for c in (0.01, 0.1, 1.0):
            ref = tv(p, c).tv
            got = indicatrix_integral(p, c, "poly:1", method="direct")
            worst = max(worst, abs(got - ref) / ref if ref > 0 else abs(got))
    dt = time.perf_counter() - t0
    report(2, "int n^{y,c} dy = TV^c", worst <= 1e-9 and dt < 30,
           f"worst rel err {worst:.2e} (tol 1e-9), {dt:.1f}s (< 30s)")


def test_03_example_closed_forms():
    worst = 0.0
    cs = 2.0 ** -np.arange(1, 11)
    for spec in (ExampleSpec("1", "harmonic", 10 ** 4), ExampleSpec("2", "pow2", 20)):
        path = example_path(spec)
        for c in cs:
            cf = closed_form_tv(spec, c)
            worst = max(worst, abs(tv(path, c).tv - cf.value) - cf.tail)
    spot = tv(example_path(ExampleSpec("2", "pow2", 20)), 0.25).tv
    ok = worst <= 1e-9 and abs(spot - 2.5) <= 1e-9
    report(3, "zigzag and tent paths match closed forms", ok,
           f"worst excess over tail {max(worst, 0):.2e} (tol 1e-9); tv(c=1/4) = {spot!r} (want 2.5)")


def test_04_cantor_function():
    rng = rng_for(104)
    fixed = [cantor_function(0.5, 30), cantor_function(0.15, 30), cantor_function(0.8, 30)]
    mism = 0
    for _ in range(100):
        n = int(rng.integers(0, 12))
        k = int(rng.integers(0, 2 ** n))
        t = gap_left_ends(n)[k] + rng.uniform(0.001, 0.999) * 3.0 ** -(n + 1)
        z = cantor_function(t, 30)
        mism += z != gap_levels(n)[k] or z != k_n_count(t, n + 1) / 2 ** (n + 1)
    ok = fixed == [0.5, 0.25, 0.75] and mism == 0
    report(4, "Cantor function on gaps", ok,
           f"values at 1/2, I_(1,0), I_(1,1) = {fixed}; {mism}/100 gap points disagree with k_(n+1)/2^(n+1)")


def test_05_example4_limits():
    t0 = time.perf_counter()
    path = example_path(ExampleSpec("2", "pow2floor/2", 22))
    ns = np.arange(8, 21)
    b = 2.0 ** -np.floor(ns / 2)
    half = np.array(pvar_along_lebesgue(path, 2, 0.5, b, 1.0))
    zero = pvar_along_lebesgue(path, 2, 0.0, b[-1:], 1.0)[0]
    dt = time.perf_counter() - t0
    err = np.abs(half - 4.0)
    trending = bool(np.all(np.diff(err) <= 1e-12))
    ok = err[-1] <= 0.2 and trending and abs(zero - 12) <= 0.6 and dt < 60
    report(5, "quadratic variation of the tent path along b_N grids", ok,
           f"gamma=1/2: {half[-1]:.5f} vs 4 (err non-increasing over N=8..20: {trending}); "
           f"gamma=0: {zero:.5f} vs 12; {dt:.1f}s (< 60s)")


def test_06_skorohod_suite():
    res = skorohod_suite(200, 106)
    ok = all(r.passed for r in res)
    report(6, "reflection invariants", ok,
           "; ".join(f"{r.name}: {r.worst:.1e}" for r in res))


def test_07_psi_sandwich():
    spec = ProcessSpec("fbm", 2 ** 16, 1.0, 107, hurst=0.7)
    c = resolution_floor(spec)
    psi = PsiSpec.power(2)
    hits = 0
    for i in range(20):
        p = simulate(spec, i)
        T = tv(p, c).tv
        m = mean_psi_variation(p, c, psi, 1.0, 64)
        slack = float(psi(c))
        hits += c * T - c * c - slack <= m <= c * T + 2 * c * c + slack
    report(7, "mean quadratic variation sandwich, fBm(0.7)", hits == 20,
           f"{hits}/20 paths inside the bracket at c = {c:.5f}")


def test_08_bm_scaling():
    spec = ProcessSpec("bm", 2 ** 16, 1.0, 108)
    t0 = time.perf_counter()
    curve = tv_scaling_curve(spec, [2.0 ** -4, 2.0 ** -5], 1.0, 100)
    dt = time.perf_counter() - t0
    mean, se = curve.stat[1], curve.stderr[1]
    flat = curve.flatness()
    flat_tol = 0.05 + 2 * float(np.hypot(*(curve.stderr / curve.stat)))
    ok = abs(mean - 1.0) <= 0.1 and flat <= flat_tol and dt < 300
    report(8, "BM c*TV^c near 1 at c = 2^-5", ok,
           f"mean {mean:.4f} +- {se:.4f} (want within 0.1 of 1); "
           f"flatness {flat:.3f} (tol {flat_tol:.3f}); {dt:.1f}s")


def test_09_c_brackets():
    spec = ProcessSpec("bm", 2 ** 14 * 16, 16.0, 109)
    br = estimate_C(spec, 16, 200)
    last = br[-1]
    contains = last.lower - 2 * last.stderr <= 1.0 <= last.lower + 1 / 16 + 2 * last.stderr
    consistent = all(a.lower <= b.upper + 2 * (a.stderr + b.stderr) for a in br for b in br)
    report(9, "bracketing the BM constant", contains and consistent,
           f"final bracket [{last.lower:.4f}, {last.upper:.4f}] +- {2 * last.stderr:.4f}; "
           f"mutually consistent: {consistent}")


def test_10_weak_convergence_examples():
    ex3 = ExampleSpec("3", "harmonic", 6, m_base=4, c_min=1e-4)
    r3 = weak_convergence_experiment(ex3, ["poly:0,1"], [1e-4], [1.0])[0]
    ex1 = ExampleSpec("1", "invsqrt", 10 ** 4)
    r1 = weak_convergence_experiment(ex1, ["poly:1"], [0.01], [0.5])[0]
    ex2 = ExampleSpec("2", "pow2floor/2", 20)
    r2 = weak_convergence_experiment(ex2, ["poly:0,0,1"], [2.0 ** -10], [1.0])[0]
    ok = abs(r3["value"] - 0.5) < 0.02 and r1["value"] < 0.02 and abs(r2["value"]) < 0.02
    report(10, "normalised crossing integrals reach the deterministic limits", ok,
           f"ex3 g=y t=1: {r3['value']:.5f} (want 1/2); ex1 g=1 t=1/2: {r1['value']:.5f} (want < 0.02); "
           f"ex2 g=y^2 t=1: {r2['value']:.5f} (want 0)")


def test_11_l1_counterexample():
    spec = ExampleSpec("3", "harmonic", 6, m_base=4, c_min=1e-4)
    rows = l1_counterexample(spec, [1e-2, 1e-3, 1e-4])
    last = rows[-1]
    trail = " -> ".join(f"{r['crossing_integral']:.4f}" for r in rows)
    ok = (spec.gap_mass() <= 0.5 and last["crossing_integral"] < 0.05
          and last["bound"] >= 0.5 and last["complement_measure"] >= 0.5)
    report(11, "crossing densities vanish on a set of measure >= 1/2", ok,
           f"sum 2^n a_(m_n) = {spec.gap_mass():.4f}; crossing integral "
           f"{trail}; "
           f"complement {last['complement_measure']:.4f}, bound {last['bound']:.4f}")


def test_12_simulators():
    worst = 0.0
    t = np.arange(1, 17) / 16
    for H, seed in ((0.3, 1121), (0.7, 1122)):
        X = simulate_values(ProcessSpec("fbm", 16, 1.0, seed, hurst=H), 10_000)[:, 1:]
        cov = 0.5 * (t[:, None] ** (2 * H) + t[None, :] ** (2 * H) - np.abs(t[:, None] - t[None, :]) ** (2 * H))
        prod = X[:, :, None] * X[:, None, :]
        z = np.abs(prod.mean(0) - cov) / (prod.std(0, ddof=1) / np.sqrt(len(X)))
        worst = max(worst, float(z.max()))
    pvals = {}
    for name, spec in (("bm", ProcessSpec("bm", 256, 1.0, 1123)),
                       ("fbm0.7", ProcessSpec("fbm", 256, 1.0, 1124, hurst=0.7)),
                       ("stable1.5", ProcessSpec("stable", 256, 1.0, 1125, alpha=1.5))):
        pvals[name] = scaling_ks(spec, 4.0, 2000).pvalue
    ok = worst <= 3 and min(pvals.values()) > 0.01
    report(12, "fBm covariance and self-similarity", ok,
           f"max |z| over covariance entries {worst:.2f} (tol 3); KS p-values "
           + ", ".join(f"{k} {v:.3f}" for k, v in pvals.items()) + " (need > 0.01)")


def test_13_level_crossing_change_of_variables():
    rng = rng_for(113)
    worst = 0.0
    for _ in range(100):
        p = random_walk(rng, 64, "step")
        for g in ("poly:1", "poly:0,1", "poly:0,0,1"):
            for direction in ("up", "down"):
                lhs, rhs = banach_vitali_check(p, g, direction=direction)
                worst = max(worst, abs(lhs - rhs))
    report(13, "level-crossing change of variables", worst <= 1e-9,
           f"worst |lhs - rhs| {worst:.2e} (tol 1e-9)")


def test_14_super_and_subadditivity():
    rng = rng_for(114)
    sup = sub = 0
    for _ in range(500):
        p = random_walk(rng, 64, "step" if rng.random() < 0.5 else "linear")
        s, t, u = np.sort(rng.uniform(0, p.horizon, 3))
        c = float(rng.uniform(0, 2))
        whole = tv(p, c, (s, u)).tv
        parts = tv(p, c, (s, t)).tv + tv(p, c, (t, u)).tv
        sup += whole < parts - 1e-12
        sub += whole > parts + c + 1e-12
    report(14, "superadditivity and near-subadditivity", sup == 0 and sub == 0,
           f"violations: super {sup}, sub {sub} over 500 instances")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    print(f"{sum(r.startswith('[PASS]') for r in RESULTS)}/{len(RESULTS)} criteria passed")
