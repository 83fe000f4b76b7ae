"""Truncated variation ``TV^c``, its upward/downward parts and c/t profiles.

The supremum over partitions is attained on sample points for both
interpolation modes: in step mode the path only takes sample values, and in
linear mode ``(|x_v - x_u| - c)_+`` is convex along each segment, so interior
points never beat the segment endpoints.  That makes the fixed-fee
"buy low / sell high" recurrence exact on the sample set.

Caveat for sampled diffusions: a coarse sampling step relative to ``c``
under-reports the continuous-time ``TV^c`` (see :mod:`pathcross.convergence`
for the resolution floor used by experiments).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .paths import CapacityError, DomainError, Mode, SampledPath, as_interval

ORACLE_MAX_SAMPLES = 2000


@dataclass(frozen=True)
class VariationResult:
    c: float
    utv: float
    dtv: float
    tv: float
    interval: Tuple[float, float]

    def as_dict(self) -> dict:
        return {"c": self.c, "utv": self.utv, "dtv": self.dtv, "tv": self.tv,
                "interval": list(self.interval)}


def _check_c(c: float) -> float:
    c = float(c)
    if not np.isfinite(c) or c < 0:
        raise DomainError(f"truncation parameter must be >= 0, got {c!r}")
    return c


def _span(path: SampledPath, interval) -> Tuple[float, float]:
    if interval is None:
        return (0.0, path.horizon)
    return (float(interval[0]), float(interval[1]))


def utv(path: SampledPath, c: float, interval=None) -> float:
    """Upward truncated variation ``UTV^c(x, [s, t])``."""
    c = _check_c(c)
    x = as_interval(path, interval).values
    return float(_kernels.utv_final(x, c))


def dtv(path: SampledPath, c: float, interval=None) -> float:
    """Downward truncated variation; ``dtv(x) = utv(-x)``."""
    c = _check_c(c)
    x = as_interval(path, interval).values
    return float(_kernels.utv_final(-x, c))


def tv(path: SampledPath, c: float, interval=None) -> VariationResult:
    c = _check_c(c)
    x = as_interval(path, interval).values
    u = float(_kernels.utv_final(x, c))
    d = float(_kernels.utv_final(-x, c))
    return VariationResult(c, u, d, u + d, _span(path, interval))


# --------------------------------------------------------------------------
# quadratic oracle

def _utv_dp(x: np.ndarray, cs: np.ndarray) -> np.ndarray:
    """Best sum of ``(x_v - x_u - c)_+`` over non-overlapping index pairs.

    ``best[j]`` is the optimum over pairs inside ``x[:j+1]``; the last pair
    either ends at ``j`` (starting at some ``i < j``) or ``j`` is unused.
    Vectorised over a whole grid of truncation levels at once.
    """
    n = x.size
    best = np.zeros((n, cs.size))
    for j in range(1, n):
        gains = np.maximum(x[j] - x[:j, None] - cs[None, :], 0.0)
        best[j] = np.maximum(best[j - 1], (best[:j] + gains).max(axis=0))
    return best[-1]


def _tv_dp(x: np.ndarray, cs: np.ndarray) -> np.ndarray:
    """Same DP for the two-sided sum ``(|x_v - x_u| - c)_+``."""
    n = x.size
    best = np.zeros((n, cs.size))
    for j in range(1, n):
        gains = np.maximum(np.abs(x[j] - x[:j, None]) - cs[None, :], 0.0)
        best[j] = np.maximum(best[j - 1], (best[:j] + gains).max(axis=0))
    return best[-1]


def _oracle_samples(path: SampledPath, interval, refine: int) -> np.ndarray:
    p = as_interval(path, interval)
    x = p.values
    if refine > 1 and p.mode is Mode.LINEAR and x.size > 1:
        frac = np.arange(refine) / refine
        inner = x[:-1, None] + frac[None, :] * np.diff(x)[:, None]
        x = np.concatenate((inner.ravel(), x[-1:]))
    if x.size > ORACLE_MAX_SAMPLES:
        raise CapacityError(
            f"oracle limited to {ORACLE_MAX_SAMPLES} samples, got {x.size}")
    return x


def tv_oracle(path: SampledPath, c: float, interval=None, refine: int = 1) -> VariationResult:
    """Brute-force ``TV^c`` by dynamic programming over all sample pairs.

    ``refine > 1`` (linear mode) also offers interpolated interior points of
    every segment as partition points.
    """
    c = _check_c(c)
    res = tv_oracle_grid(path, [c], interval, refine)
    return res[0]


def tv_oracle_grid(path: SampledPath, cs: Sequence[float], interval=None, refine: int = 1):
    cs = np.array([_check_c(c) for c in cs], dtype=np.float64)
    x = _oracle_samples(path, interval, refine)
    if x.size < 2:
        u = d = np.zeros(cs.size)
    else:
        u = _utv_dp(x, cs)
        d = _utv_dp(-x, cs)
    span = _span(path, interval)
    return [VariationResult(float(c), float(a), float(b), float(a + b), span)
            for c, a, b in zip(cs, u, d)]


def tv_direct_oracle(path: SampledPath, c: float, interval=None, refine: int = 1) -> float:
    """Two-sided DP, independent of the UTV + DTV decomposition."""
    c = _check_c(c)
    x = _oracle_samples(path, interval, refine)
    if x.size < 2:
        return 0.0
    return float(_tv_dp(x, np.array([c]))[0])


# --------------------------------------------------------------------------
# profiles

def _with_inserted_times(path: SampledPath, ts: np.ndarray) -> Tuple[SampledPath, np.ndarray]:
    """Same path with ``ts`` added as sample points; returns their indices."""
    extra = ts[~np.isin(ts, path.times)]
    extra = np.unique(extra)
    if extra.size:
        all_t = np.concatenate((path.times, extra))
        all_x = np.concatenate((path.values, np.atleast_1d(path.eval(extra))))
        order = np.argsort(all_t, kind="stable")
        path = SampledPath(all_t[order], all_x[order], path.mode)
    idx = np.searchsorted(path.times, ts)
    return path, idx


def tv_profile(path: SampledPath, c_grid, t_grid) -> np.ndarray:
    """Matrix of ``TV^c(x, [0, t])`` results, rows over ``c``, columns over ``t``."""
    cs = np.asarray(c_grid, dtype=np.float64).ravel()
    ts = np.asarray(t_grid, dtype=np.float64).ravel()
    if cs.size == 0 or ts.size == 0:
        raise DomainError("c_grid and t_grid must be non-empty")
    for c in cs:
        _check_c(c)
    if np.any(ts < 0) or np.any(ts > path.horizon):
        raise DomainError("t_grid outside the path domain")
    dense, idx = _with_inserted_times(path, ts)
    x = dense.values
    out = np.empty((cs.size, ts.size), dtype=object)
    for i, c in enumerate(cs):
        up = _kernels.utv_prefix(x, c)[idx]
        down = _kernels.utv_prefix(-x, c)[idx]
        for j, t in enumerate(ts):
            out[i, j] = VariationResult(float(c), float(up[j]), float(down[j]),
                                        float(up[j] + down[j]), (0.0, float(t)))
    return out


def tv_values(path: SampledPath, c_grid, interval=None) -> np.ndarray:
    """Plain array of ``TV^c`` over a grid of ``c`` (no result objects)."""
    x = as_interval(path, interval).values
    return np.array([_kernels.utv_final(x, _check_c(c)) + _kernels.utv_final(-x, c)
                     for c in np.asarray(c_grid, dtype=np.float64).ravel()])


def normalization_phi(path: SampledPath, c: float) -> float:
    """``1 / (1 + TV^c(x, [0, 1]))``."""
    c = float(c)
    if not c > 0:
        raise DomainError(f"c must be > 0, got {c!r}")
    if path.horizon < 1.0:
        raise DomainError(f"path domain [0, {path.horizon:g}] does not cover [0, 1]")
    return 1.0 / (1.0 + tv(path, c, (0.0, 1.0)).tv)
