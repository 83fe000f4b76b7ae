"""Monte Carlo harness for truncated-variation limits.

Resolution rule: a sampled path under-reports ``TV^c`` when the sampling step
is coarse relative to ``c`` (each leg misses part of its overshoot).  Every
experiment refuses ``c < RESOLUTION_K * (T / n)^beta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .crossings import indicatrix_integral
from .occupation import crossing_measure_integral, occupation_integral
from .paths import CapacityError, DomainError, SampledPath
from .simulators import (ExampleKind, ExampleSpec, ProcessKind, ProcessSpec, admissible_c,
                         example_path, gap_levels, limit_reference, simulate)
from .testfunctions import IntervalUnion, parse_g
from .variation import normalization_phi, tv

RESOLUTION_K = 8.0
RESOLUTION_RULE = "c >= 8 * (T / n_samples)^beta"


class ResolutionError(CapacityError):
    """Requested truncation level is below what the sampling grid resolves."""


def resolution_floor(spec: ProcessSpec) -> float:
    return RESOLUTION_K * (spec.horizon / spec.n_samples) ** spec.beta


def check_resolution(spec: ProcessSpec, c_grid) -> None:
    floor = resolution_floor(spec)
    bad = [c for c in np.ravel(c_grid) if c < floor * (1 - 1e-12)]
    if bad:
        raise ResolutionError(
            f"c={min(bad):g} below resolution floor {floor:g} ({RESOLUTION_RULE}, "
            f"beta={spec.beta:g}, n_samples={spec.n_samples}, T={spec.horizon:g})")


def dyadic_grid(lo: int, hi: int) -> np.ndarray:
    """``[2^-lo, ..., 2^-hi]`` (decreasing)."""
    return 2.0 ** -np.arange(lo, hi + 1, dtype=float)


def parse_c_grid(text: str) -> np.ndarray:
    """``dyadic:a:b`` or a comma list of positive reals."""
    if text.startswith("dyadic:"):
        try:
            _, a, b = text.split(":")
            return dyadic_grid(int(a), int(b))
        except ValueError:
            raise DomainError(f"bad c grid {text!r}; expected dyadic:a:b") from None
    try:
        grid = np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError:
        raise DomainError(f"bad c grid {text!r}") from None
    if grid.size == 0 or np.any(grid <= 0):
        raise DomainError(f"c grid must hold positive values, got {text!r}")
    return grid


def _tv_values(x: np.ndarray, c: float) -> float:
    return float(_kernels.utv_final(x, c) + _kernels.utv_final(-x, c))


def _prefix(path: SampledPath, t: float) -> np.ndarray:
    if t >= path.horizon:
        return np.ascontiguousarray(path.values)
    return np.ascontiguousarray(path.restrict(0.0, t).values)


# --------------------------------------------------------------------------
# scaling curves

@dataclass(frozen=True)
class ScalingCurve:
    c_grid: np.ndarray
    stat: np.ndarray
    stderr: np.ndarray
    n_paths: int
    n_samples: int
    t: float
    raw: np.ndarray = field(repr=False)
    normalization: str = "power"
    rule: str = RESOLUTION_RULE

    def rows(self) -> List[Dict]:
        return [{"c": float(c), "mean": float(m), "stderr": float(s), "n_paths": self.n_paths,
                 "n_samples": self.n_samples, "t": self.t}
                for c, m, s in zip(self.c_grid, self.stat, self.stderr)]

    def flatness(self) -> float:
        """Relative change of the mean between the two smallest ``c``."""
        order = np.argsort(self.c_grid)
        a, b = self.stat[order[0]], self.stat[order[1]]
        return float(abs(a - b) / abs(b)) if b != 0 else float(abs(a - b))


def _aggregate(raw: np.ndarray):
    n = raw.shape[0]
    mean = raw.mean(axis=0)
    se = raw.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros(raw.shape[1])
    return mean, se


def tv_scaling_curve(source: Union[ProcessSpec, ExampleSpec], c_grid, t: Optional[float] = None,
                     n_paths: int = 100) -> ScalingCurve:
    """Per-``c`` mean of ``c^{1/beta - 1} TV^c(X, [0, t])``; deterministic inputs
    use ``phi(c) TV^c`` with ``phi(c) = 1 / (1 + TV^c[0, 1])`` instead."""
    cs = np.asarray(c_grid, dtype=float).ravel()
    if cs.size == 0 or np.any(cs <= 0):
        raise DomainError("c grid must be non-empty and positive")
    if isinstance(source, ExampleSpec):
        floor = admissible_c(source)
        if np.any(cs < floor * (1 - 1e-12)):
            raise ResolutionError(f"c below {floor:g}: the built path omits terms that still count")
        path = example_path(source)
        t = path.horizon if t is None else float(t)
        raw = np.array([[normalization_phi(path, c) * tv(path, c, (0.0, t) if t < 1 else None).tv
                         for c in cs]])
        mean, se = _aggregate(raw)
        return ScalingCurve(cs, mean, se, 1, len(path) - 1, t, raw, "phi")
    check_resolution(source, cs)
    t = source.horizon if t is None else float(t)
    expo = 1.0 / source.beta - 1.0
    raw = np.empty((n_paths, cs.size))
    for i in range(n_paths):
        x = _prefix(simulate(source, i), t)
        raw[i] = [c ** expo * _tv_values(x, c) for c in cs]
    mean, se = _aggregate(raw)
    return ScalingCurve(cs, mean, se, n_paths, source.n_samples, t, raw)


# --------------------------------------------------------------------------
# bracketing the scaling constant

@dataclass(frozen=True)
class CBracket:
    n: int
    lower: float
    upper: float
    n_paths: int
    stderr: float

    def as_dict(self) -> dict:
        return {"n": self.n, "lower": self.lower, "upper": self.upper,
                "n_paths": self.n_paths, "stderr": self.stderr}


def estimate_C(spec: ProcessSpec, n_max: int, n_paths: int) -> List[CBracket]:
    """Brackets ``E TV^1[0, n] / n <= C <= (E TV^1[0, n] + 1) / n`` for ``n = 1..n_max``.

    Paths are simulated on ``[0, n_max]`` with ``spec.n_samples`` steps.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    sim = replace(spec, horizon=float(n_max))
    check_resolution(sim, [1.0])
    if sim.n_samples % n_max:
        raise DomainError(f"n_samples={sim.n_samples} must be a multiple of n_max={n_max}")
    idx = np.arange(1, n_max + 1) * (sim.n_samples // n_max)
    raw = np.empty((n_paths, n_max))
    for i in range(n_paths):
        x = np.ascontiguousarray(simulate(sim, i).values)
        raw[i] = (_kernels.utv_prefix(x, 1.0) + _kernels.utv_prefix(-x, 1.0))[idx]
    n = np.arange(1, n_max + 1)
    mean, se = _aggregate(raw / n)
    return [CBracket(int(k), float(m), float(m + 1.0 / k), n_paths, float(s))
            for k, m, s in zip(n, mean, se)]


# --------------------------------------------------------------------------
# weak convergence of crossing measures

def weak_convergence_experiment(source: Union[ProcessSpec, ExampleSpec], g_set: Sequence,
                                c_grid, t_grid: Sequence[float], n_paths: int = 1,
                                C: Optional[float] = None) -> List[Dict]:
    """Gap ``max_t |phi(c) int n^{y,c} g dy - limit(t)|`` per ``(c, g)``.

    Deterministic examples are compared with their closed-form limits.  For
    simulated paths the limit is ``C * int_0^t g(X_s) ds`` with
    ``phi(c) = c^{1/beta - 1}``; ``C`` defaults to 1 for Brownian motion and
    must be supplied otherwise.
    """
    cs = np.asarray(c_grid, dtype=float).ravel()
    gs = [parse_g(g) for g in g_set]
    rows = []
    if isinstance(source, ExampleSpec):
        if source.which is ExampleKind.CANTOR:
            raise DomainError("no limit reference for the Cantor staircase")
        floor = admissible_c(source)
        if np.any(cs < floor * (1 - 1e-12)):
            raise ResolutionError(f"c below {floor:g}: the built path omits terms that still count")
        path = example_path(source)
        for c in cs:
            phi = normalization_phi(path, c)
            for g in gs:
                vals = [crossing_measure_integral(path, t, c, phi, g) for t in t_grid]
                refs = [limit_reference(source, g, t) for t in t_grid]
                gaps = np.abs(np.subtract(vals, refs))
                rows.append({"c": float(c), "g": g.spec, "gap": float(gaps.max()),
                             "value": float(vals[int(gaps.argmax())]),
                             "reference": float(refs[int(gaps.argmax())]), "stderr": 0.0})
        return rows
    if C is None:
        if source.kind is not ProcessKind.BM and not (source.kind is ProcessKind.FBM and source.hurst == 0.5):
            raise DomainError("missing reference: supply C for processes other than Brownian motion")
        C = 1.0
    check_resolution(source, cs)
    expo = 1.0 / source.beta - 1.0
    gaps = np.empty((n_paths, cs.size, len(gs)))
    for i in range(n_paths):
        path = simulate(source, i)
        for j, c in enumerate(cs):
            for k, g in enumerate(gs):
                vals = [crossing_measure_integral(path, t, c, c ** expo, g) for t in t_grid]
                refs = [C * occupation_integral(path, t, g) for t in t_grid]
                gaps[i, j, k] = np.max(np.abs(np.subtract(vals, refs)))
    mean = gaps.mean(axis=0)
    se = gaps.std(axis=0, ddof=1) / np.sqrt(n_paths) if n_paths > 1 else np.zeros_like(mean)
    for j, c in enumerate(cs):
        for k, g in enumerate(gs):
            rows.append({"c": float(c), "g": g.spec, "gap": float(mean[j, k]),
                         "stderr": float(se[j, k])})
    return rows


# --------------------------------------------------------------------------
# crossing densities need not converge in L1

def excluded_levels(spec: ExampleSpec) -> IntervalUnion:
    """Union of the level ranges ``[zeta_gap, zeta_gap + a_{m_n}]`` swept inside the gaps."""
    if spec.which is not ExampleKind.EX3:
        raise DomainError("excluded levels are defined for example 3 only")
    starts, ends = [], []
    for n in range(spec.depth):
        z = gap_levels(n)
        starts.append(z)
        ends.append(z + float(spec.seq(int(spec.m(n)))))
    return IntervalUnion(list(zip(np.concatenate(starts), np.concatenate(ends))))


def l1_counterexample(spec: ExampleSpec, c_grid) -> List[Dict]:
    """Per ``c``: the normalised crossing integral against ``1_{[0,1] minus B}``,
    the same integral against ``1_{[0,1]}``, the measure of ``[0,1] minus B`` and the
    lower bound ``1 - sum 2^n a_{m_n}`` for it."""
    if spec.which is not ExampleKind.EX3:
        raise DomainError("the counterexample uses example 3")
    cs = np.asarray(c_grid, dtype=float).ravel()
    floor = admissible_c(spec)
    if np.any(cs < floor * (1 - 1e-12)):
        raise ResolutionError(f"c below {floor:g}: the built path omits terms that still count")
    path = example_path(spec)
    complement = excluded_levels(spec).complement_within(0.0, 1.0)
    unit = parse_g("indicator:0,1")
    bound = 1.0 - spec.gap_mass()
    rows = []
    for c in cs:
        phi = normalization_phi(path, c)
        rows.append({
            "c": float(c),
            "crossing_integral": phi * indicatrix_integral(path, c, complement),
            "unit_integral": phi * indicatrix_integral(path, c, unit),
            "complement_measure": complement.measure(),
            "bound": bound,
        })
    return rows
