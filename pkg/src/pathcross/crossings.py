"""Interval and level crossing counts, the crossing-count profile over levels,
and the level-integral identities built on them.

Band semantics for ``d^{y,c}``: wait until the path is ``>= y + c/2``, then
count once it is strictly ``< y - c/2``, and repeat.  Upcrossings are the
mirror image (``<= y - c/2`` then ``> y + c/2``).  In linear mode a segment
reaches a constant barrier iff one of its endpoints does, so scanning samples
is exact in both modes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import _kernels
from .paths import CapacityError, DomainError, Mode, SampledPath, as_interval
from .testfunctions import TestFunction, parse_g

DIRECT_MAX_SAMPLES = 4096


@dataclass(frozen=True)
class CrossingRecord:
    y: float
    c: float
    interval: Tuple[float, float]
    up: int
    down: int

    @property
    def total(self) -> int:
        return self.up + self.down

    def as_dict(self) -> dict:
        return {"y": self.y, "c": self.c, "interval": list(self.interval),
                "up": self.up, "down": self.down, "total": self.total}


@dataclass(frozen=True)
class IndicatrixProfile:
    """``y -> n^{y,c}``: ``counts[i]`` holds on ``(breakpoints[i], breakpoints[i+1])``."""

    c: float
    breakpoints: np.ndarray
    counts: np.ndarray

    def integral(self, g: TestFunction) -> float:
        if self.counts.size == 0:
            return 0.0
        pieces = g.integral(self.breakpoints[:-1], self.breakpoints[1:])
        return float(np.dot(self.counts, pieces))

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        if self.counts.size == 0:
            return np.zeros(y.shape, dtype=np.int64)
        i = np.searchsorted(self.breakpoints, y, side="right") - 1
        inside = (i >= 0) & (i < self.counts.size)
        return np.where(inside, self.counts[np.clip(i, 0, self.counts.size - 1)], 0)


def _check_c(c: float) -> float:
    c = float(c)
    if not (np.isfinite(c) and c > 0):
        raise DomainError(f"band width c must be > 0, got {c!r}")
    return c


def _span(path: SampledPath, interval) -> Tuple[float, float]:
    return (0.0, path.horizon) if interval is None else (float(interval[0]), float(interval[1]))


def _samples(path: SampledPath, interval) -> np.ndarray:
    return np.ascontiguousarray(as_interval(path, interval).values)


def downcrossings(path: SampledPath, y: float, c: float, interval=None) -> int:
    c = _check_c(c)
    return int(_kernels.downcrossings(_samples(path, interval), y - c / 2, y + c / 2))


def upcrossings(path: SampledPath, y: float, c: float, interval=None) -> int:
    c = _check_c(c)
    return int(_kernels.upcrossings(_samples(path, interval), y - c / 2, y + c / 2))


def crossings(path: SampledPath, y: float, c: float, interval=None) -> CrossingRecord:
    c = _check_c(c)
    x = _samples(path, interval)
    lo, hi = y - c / 2, y + c / 2
    return CrossingRecord(float(y), c, _span(path, interval),
                          int(_kernels.upcrossings(x, lo, hi)),
                          int(_kernels.downcrossings(x, lo, hi)))


def level_upcrossings(path: SampledPath, y: float, interval=None) -> int:
    return int(_kernels.level_crossings(_samples(path, interval), float(y))[0])


def level_downcrossings(path: SampledPath, y: float, interval=None) -> int:
    return int(_kernels.level_crossings(_samples(path, interval), float(y))[1])


# --------------------------------------------------------------------------
# profile over levels

def _direct_profile(x: np.ndarray, c: float) -> IndicatrixProfile:
    """Counts evaluated at the midpoint of every piece between ``x_i +- c/2``."""
    if x.size > DIRECT_MAX_SAMPLES:
        raise CapacityError(
            f"direct profile limited to {DIRECT_MAX_SAMPLES} samples, got {x.size}; use method='legs'")
    bp = np.unique(np.concatenate((x - c / 2, x + c / 2)))
    if bp.size < 2:
        return IndicatrixProfile(c, bp, np.zeros(0, dtype=np.int64))
    mids = 0.5 * (bp[:-1] + bp[1:])
    up, down = _kernels.crossings_at_levels(x, mids, c)
    return IndicatrixProfile(c, bp, up + down)


def _legs_profile(x: np.ndarray, c: float) -> IndicatrixProfile:
    """Profile from the alternating c-zigzag: each leg adds one crossing on
    ``(min + c/2, max - c/2)``."""
    ext = _kernels.c_legs(x, c)
    if ext.size < 2:
        return IndicatrixProfile(c, np.zeros(0), np.zeros(0, dtype=np.int64))
    lo = np.minimum(ext[:-1], ext[1:]) + c / 2
    hi = np.maximum(ext[:-1], ext[1:]) - c / 2
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    if lo.size == 0:
        return IndicatrixProfile(c, np.zeros(0), np.zeros(0, dtype=np.int64))
    bp, inv = np.unique(np.concatenate((lo, hi)), return_inverse=True)
    delta = np.zeros(bp.size, dtype=np.int64)
    np.add.at(delta, inv[: lo.size], 1)
    np.add.at(delta, inv[lo.size:], -1)
    return IndicatrixProfile(c, bp, np.cumsum(delta)[:-1])


def indicatrix(path: SampledPath, c: float, interval=None, method: str = "auto") -> IndicatrixProfile:
    """Exact piecewise-constant profile ``y -> n^{y,c}(x, interval)``.

    ``direct`` counts crossings at the midpoint of every piece (quadratic);
    ``legs`` reads the profile off the c-zigzag of the path (linear time).
    """
    c = _check_c(c)
    x = _samples(path, interval)
    if method == "auto":
        method = "direct" if x.size <= 512 else "legs"
    if method == "direct":
        return _direct_profile(x, c)
    if method == "legs":
        return _legs_profile(x, c)
    raise DomainError(f"unknown method {method!r}")


def indicatrix_integral(path: SampledPath, c: float, g="poly:1", interval=None,
                        method: str = "auto") -> float:
    """``int g(y) n^{y,c}(x, interval) dy`` in closed form piece by piece."""
    g = parse_g(g)
    c = _check_c(c)
    x = _samples(path, interval)
    if method == "auto":
        method = "direct" if x.size <= 512 else "legs"
    if method == "legs":
        # skip building the profile: sum g over every leg band directly
        ext = _kernels.c_legs(x, c)
        if ext.size < 2:
            return 0.0
        lo = np.minimum(ext[:-1], ext[1:]) + c / 2
        hi = np.maximum(ext[:-1], ext[1:]) - c / 2
        keep = hi > lo
        return float(np.sum(g.integral(lo[keep], hi[keep])))
    return indicatrix(path, c, interval, method).integral(g)


# --------------------------------------------------------------------------
# level-integral identity for piecewise monotone paths

def _level_count_integral(x: np.ndarray, g: TestFunction, which: int) -> float:
    """``int g(z) u^z dz`` (which=0) or ``int g(z) d^z dz`` (which=1) from
    level counts at the midpoints between consecutive distinct sample values."""
    levels = np.unique(x)
    if levels.size < 2:
        return 0.0
    total = 0.0
    mids = 0.5 * (levels[:-1] + levels[1:])
    pieces = g.integral(levels[:-1], levels[1:])
    for m, w in zip(mids, pieces):
        total += _kernels.level_crossings(x, m)[which] * w
    return float(total)


def banach_vitali_check(path: SampledPath, g="poly:1", t=None, direction: str = "up") -> Tuple[float, float]:
    """Both sides of the level-crossing change-of-variables identity on ``[0, t]``.

    ``lhs = int g(z) u^z dz``.  ``rhs = int g(x_{s-}) dUTV(x, ds)`` plus, for
    every upward jump, ``int_{x_{s-}}^{x_s} [g(z) - g(x_{s-})] dz``.  With
    ``direction='down'`` the downward counterparts are used.  Finite samples
    are always piecewise monotone: in step mode ``UTV`` is purely atomic, in
    linear mode it is absolutely continuous on rising segments.
    """
    g = parse_g(g)
    if direction not in ("up", "down"):
        raise DomainError(f"direction must be 'up' or 'down', got {direction!r}")
    p = path if t is None else as_interval(path, (0.0, t))
    x = np.ascontiguousarray(p.values)
    lhs = _level_count_integral(x, g, 0 if direction == "up" else 1)

    a, b = x[:-1], x[1:]
    moving = b > a if direction == "up" else b < a
    a, b = a[moving], b[moving]
    size = np.abs(b - a)
    band = g.integral(np.minimum(a, b), np.maximum(a, b))
    if p.mode is Mode.STEP:
        # atom of mass |jump| at x_{s-} = a, then the jump correction
        atoms = g(a) * size
        rhs = float(np.sum(atoms) + np.sum(band - atoms))
    else:
        # continuous: int g(x_s) d|x|_s over monotone segments, no jumps
        rhs = float(np.sum(band))
    return lhs, rhs
