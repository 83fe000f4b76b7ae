"""Randomised property suites shared by the CLI ``verify`` command and the tests."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import _kernels
from .crossings import banach_vitali_check, indicatrix_integral
from .lebesgue import PsiSpec, build_partition, mean_psi_variation, psi_variation
from .paths import SampledPath
from .simulators import ExampleSpec, cantor_function, closed_form_tv, example_path, rng_for
from .skorohod import regularize_solution
from .variation import tv, tv_oracle_grid


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    trials: int

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<34} worst={self.worst:.3e}  tol={self.tolerance:.1e}  trials={self.trials}"


def random_path(rng: np.random.Generator, n_max: int, mode: str = "step", lo: float = -2.0, hi: float = 2.0) -> SampledPath:
    n = int(rng.integers(1, n_max + 1))
    return SampledPath.regular(rng.uniform(lo, hi, n), 1.0, mode)


def random_walk(rng: np.random.Generator, n_max: int, mode: str) -> SampledPath:
    n = int(rng.integers(2, n_max + 1))
    x = np.concatenate(([0.0], np.cumsum(rng.normal(size=n - 1))))
    times = np.concatenate(([0.0], np.cumsum(rng.uniform(0.1, 1.0, n - 1))))
    return SampledPath(times, x, mode)


def oracle_suite(trials: int, seed: int) -> List[CheckResult]:
    rng = rng_for(seed, 1)
    cs = np.round(np.arange(0, 41) * 0.05, 10)
    worst = 0.0
    for _ in range(trials):
        p = random_path(rng, 64)
        ref = tv_oracle_grid(p, cs)
        for c, r in zip(cs, ref):
            fast = tv(p, c)
            worst = max(worst, abs(fast.utv - r.utv), abs(fast.dtv - r.dtv), abs(fast.tv - r.tv))
    return [CheckResult("oracle equivalence", worst <= 1e-12, worst, 1e-12, trials)]


def banach_suite(trials: int, seed: int) -> List[CheckResult]:
    rng = rng_for(seed, 2)
    worst = 0.0
    for i in range(trials):
        p = random_walk(rng, 512, "step" if i % 2 else "linear")
        for c in (0.01, 0.1, 1.0, 10.0):
            ref = tv(p, c).tv
            got = indicatrix_integral(p, c, "poly:1", method="direct")
            worst = max(worst, abs(got - ref) / ref if ref > 0 else abs(got))
    return [CheckResult("indicatrix integral = TV^c", worst <= 1e-9, worst, 1e-9, trials)]


def skorohod_suite(trials: int, seed: int) -> List[CheckResult]:
    rng = rng_for(seed, 3)
    comp = band = bound = transfer = tele = 0.0
    for i in range(trials):
        p = random_walk(rng, 200, "step" if i % 2 else "linear")
        x = np.ascontiguousarray(p.values)
        span = float(np.ptp(x)) or 1.0
        for c in (0.05 * span, 0.2 * span, 0.6 * span):
            sol = regularize_solution(p, c)
            a, b = sol.barriers
            phi = sol.phi.values
            dd = np.diff(sol.eta_d.values) > 0
            du = np.diff(sol.eta_u.values) > 0
            comp = max(comp, np.max(np.abs(phi[1:][dd] - a), initial=0.0),
                       np.max(np.abs(phi[1:][du] - b), initial=0.0))
            xc = sol.regularization.values
            band = max(band, np.max(np.abs(x - xc)) - c / 2)
            u = _kernels.utv_prefix(x, c)
            d = _kernels.utv_prefix(-x, c)
            bound = max(bound, _kernels.utv_final(np.ascontiguousarray(xc), 0.0) - u[-1] - c)
            tele = max(tele, np.max(np.abs(xc - xc[0] - (u - d))))
            for z in np.linspace(x.min(), x.max(), 9):
                up_c = _kernels.upcrossings(x, z - c / 2, z + c / 2)
                up_0 = _kernels.level_crossings(np.ascontiguousarray(xc), z)[0]
                transfer = max(transfer, abs(up_c - up_0))
    return [
        CheckResult("reflection complementarity", comp <= 1e-12, comp, 1e-12, trials),
        CheckResult("|x - x^c| <= c/2", band <= 1e-12, max(band, 0.0), 1e-12, trials),
        CheckResult("UTV(x^c) <= UTV^c(x) + c", bound <= 1e-12, max(bound, 0.0), 1e-12, trials),
        CheckResult("crossing transfer <= 1", transfer <= 1, transfer, 1, trials),
        CheckResult("x^c_t - x^c_0 = UTV^c - DTV^c", tele <= 1e-9, tele, 1e-9, trials),
    ]


def levels_suite(trials: int, seed: int) -> List[CheckResult]:
    rng = rng_for(seed, 4)
    worst = 0.0
    for _ in range(trials):
        p = random_walk(rng, 64, "step")
        for g in ("poly:1", "poly:0,1", "poly:0,0,1"):
            for direction in ("up", "down"):
                lhs, rhs = banach_vitali_check(p, g, direction=direction)
                worst = max(worst, abs(lhs - rhs))
    return [CheckResult("level-crossing change of variables", worst <= 1e-9, worst, 1e-9, trials)]


def sandwich_suite(trials: int, seed: int) -> List[CheckResult]:
    rng = rng_for(seed, 5)
    worst = -np.inf
    grid_step = 0.0
    psi = PsiSpec.power(2)
    for _ in range(trials):
        p = random_walk(rng, 400, "linear")
        c = float(rng.uniform(0.2, 2.0))
        t = p.horizon
        T = tv(p, c).tv
        m = mean_psi_variation(p, c, psi, t, 16)
        slack = psi(c)
        worst = max(worst, (c * T - c * c - slack) - m, m - (c * T + 2 * c * c + slack))
        part = build_partition(p, c, 0.5 * c)
        k = part.k_count(t)
        v = part.tau_values
        if k >= 2:
            grid_step = max(grid_step, float(np.max(np.abs(np.abs(np.diff(v[1:k + 1])) - c))))
        V = psi_variation(p, part, psi, t)
        worst = max(worst, (k - 1) * psi(c) - V - 1e-12, V - (k + 1) * psi(c) - 1e-12)
    return [
        CheckResult("psi-variation brackets", worst <= 0, max(worst, 0.0), 0.0, trials),
        CheckResult("grid steps equal c", grid_step <= 1e-12, grid_step, 1e-12, trials),
    ]


def examples_suite(trials: int, seed: int) -> List[CheckResult]:
    out = []
    worst = 0.0
    for spec in (ExampleSpec("1", "harmonic", 10 ** 4), ExampleSpec("2", "pow2", 14)):
        p = example_path(spec)
        for c in 2.0 ** -np.arange(1, 11):
            cf = closed_form_tv(spec, c)
            worst = max(worst, abs(tv(p, c).tv - cf.value) - cf.tail)
    out.append(CheckResult("closed-form TV of examples", worst <= 1e-9, max(worst, 0.0), 1e-9, 20))
    pts = np.array([0.5, 0.15, 0.85])
    err = float(np.max(np.abs(cantor_function(pts, 40) - np.array([0.5, 0.25, 0.75]))))
    out.append(CheckResult("Cantor staircase on gaps", err == 0.0, err, 0.0, pts.size))
    return out


SUITES: Dict[str, Callable[[int, int], List[CheckResult]]] = {
    "oracle": oracle_suite,
    "banach": banach_suite,
    "skorohod": skorohod_suite,
    "levels": levels_suite,
    "sandwich": sandwich_suite,
    "examples": examples_suite,
}


def run_suite(name: str, trials: int, seed: int) -> List[CheckResult]:
    if name == "all":
        return [r for key in SUITES for r in SUITES[key](trials, seed)]
    return SUITES[name](trials, seed)
