"""Occupation measures, binned local-time densities and normalised crossing integrals.

Time and level measures are both Lebesgue.  Linear-mode integrals are exact
per segment; step-mode integrals weight each value by its dwell time, which
equals integrating against the left limits since the jump set is finite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .crossings import indicatrix_integral
from .paths import DomainError, Mode, SampledPath, as_interval
from .testfunctions import parse_g


@dataclass(frozen=True)
class LocalTimeEstimate:
    horizon: float
    bin_edges: np.ndarray
    density: np.ndarray

    @property
    def total_time(self) -> float:
        return float(np.sum(self.density * np.diff(self.bin_edges)))


def _upto(path: SampledPath, t: float) -> SampledPath:
    t = float(t)
    if not 0 < t <= path.horizon:
        raise DomainError(f"t={t!r} outside (0, {path.horizon:g}]")
    return path if t == path.horizon else as_interval(path, (0.0, t))


def _time_below(p: SampledPath, levels: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """Lebesgue time in ``[0, horizon]`` with ``x_s <= y`` for each level ``y``."""
    x, dt = p.values, np.diff(p.times)
    out = np.zeros(levels.size)
    if p.mode is Mode.STEP:
        order = np.argsort(x[:-1], kind="stable")
        cum = np.concatenate(([0.0], np.cumsum(dt[order])))
        return cum[np.searchsorted(x[:-1][order], levels, side="right")]
    lo = np.minimum(x[:-1], x[1:])
    hi = np.maximum(x[:-1], x[1:])
    for a in range(0, lo.size, chunk):
        l, h, d = lo[a:a + chunk, None], hi[a:a + chunk, None], dt[a:a + chunk, None]
        width = h - l
        flat = width == 0
        frac = np.where(flat, (levels[None, :] >= l).astype(float),
                        np.clip((levels[None, :] - l) / np.where(flat, 1.0, width), 0.0, 1.0))
        out += np.sum(d * frac, axis=0)
    return out


def occupation_density(path: SampledPath, t: float, bin_edges) -> LocalTimeEstimate:
    """Time spent in each level bin up to ``t``, per unit level."""
    edges = np.asarray(bin_edges, dtype=np.float64)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise DomainError("bin_edges must be strictly increasing with at least two entries")
    p = _upto(path, t)
    xs = p.values if p.mode is Mode.LINEAR else p.values[:-1]
    if xs.min() < edges[0] or xs.max() > edges[-1]:
        raise DomainError(f"bins [{edges[0]:g}, {edges[-1]:g}] do not cover the path range "
                          f"[{xs.min():g}, {xs.max():g}]")
    below = _time_below(p, edges)
    mass = np.diff(below)
    # time sitting exactly on the lowest edge belongs to the first bin
    mass[0] += below[0]
    return LocalTimeEstimate(p.horizon, edges, mass / np.diff(edges))


def occupation_integral(path: SampledPath, t: float, g) -> float:
    """``int_0^t g(x_s) ds``."""
    g = parse_g(g)
    p = _upto(path, t)
    x, dt = p.values, np.diff(p.times)
    if p.mode is Mode.STEP:
        return float(np.sum(g(x[:-1]) * dt))
    a, b = x[:-1], x[1:]
    dx = b - a
    tiny = np.abs(dx) <= 1e-12 * (1.0 + np.abs(a))
    slope_part = g.integral(a, b) / np.where(tiny, 1.0, dx)
    mean_g = np.where(tiny, g(0.5 * (a + b)), slope_part)
    return float(np.sum(mean_g * dt))


def crossing_measure_integral(path: SampledPath, t: float, c: float, phi_of_c: float, g) -> float:
    """``phi(c) * int n^{y,c}(x, [0, t]) g(y) dy``."""
    if not phi_of_c > 0:
        raise DomainError(f"normalisation must be > 0, got {phi_of_c!r}")
    if t <= 0:
        return 0.0
    interval = None if t >= path.horizon else (0.0, t)
    return float(phi_of_c) * indicatrix_integral(path, c, g, interval)


def weak_gap(path: SampledPath, t_grid: Sequence[float], c: float, phi_of_c: float, g,
             reference: Callable[[float], float]) -> float:
    """``max_t |phi(c) int n^{y,c} g dy - reference(t)|`` over ``t_grid``."""
    g = parse_g(g)
    gaps = [abs(crossing_measure_integral(path, t, c, phi_of_c, g) - float(reference(t)))
            for t in t_grid]
    return float(max(gaps)) if gaps else 0.0
