"""Lebesgue partitions of continuous paths and psi-variations along them.

The partition for grid ``c*Z + r`` records successive times at which the path
reaches a grid value different from the last one reached.  Values within
``SNAP_TOL`` of a grid line are treated as lying on it, so a grazing touch is
not counted twice.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .paths import DomainError, Mode, ModeError, SampledPath, as_interval

SNAP_TOL = 1e-12


class PsiKind(str, enum.Enum):
    POWER = "pow"
    CUSTOM = "table"


@dataclass(frozen=True)
class PsiSpec:
    """``psi(u) = u**p`` or a non-decreasing piecewise-linear table through ``(0, 0)``."""

    kind: PsiKind = PsiKind.POWER
    p: float = 2.0
    table: Tuple[Tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        if self.kind is PsiKind.POWER:
            if not self.p >= 1:
                raise DomainError(f"power psi needs p >= 1, got {self.p!r}")
        else:
            if len(self.table) < 2:
                raise DomainError("custom psi table needs at least two points")
            u = np.array([a for a, _ in self.table])
            v = np.array([b for _, b in self.table])
            if u[0] != 0 or v[0] != 0:
                raise DomainError("custom psi table must start at (0, 0)")
            if np.any(np.diff(u) <= 0) or np.any(np.diff(v) < 0):
                raise DomainError("custom psi table must be increasing in u and non-decreasing in psi")

    @classmethod
    def power(cls, p: float) -> "PsiSpec":
        return cls(PsiKind.POWER, float(p))

    @classmethod
    def parse(cls, text: str) -> "PsiSpec":
        kind, _, arg = str(text).partition(":")
        if kind == "pow":
            try:
                return cls.power(float(arg))
            except ValueError:
                raise DomainError(f"bad psi spec {text!r}") from None
        raise DomainError(f"bad psi spec {text!r}; expected pow:p")

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind is PsiKind.POWER:
            return u ** self.p
        us = np.array([a for a, _ in self.table])
        vs = np.array([b for _, b in self.table])
        # constant extrapolation past the last knot keeps psi non-decreasing
        return np.interp(u, us, vs)


@dataclass(frozen=True)
class LebesguePartition:
    c: float
    r: float
    taus: np.ndarray
    levels: np.ndarray  # grid indices for k >= 1; first entry is (x_0 - r)/c
    x0: float = 0.0

    @property
    def tau_values(self) -> np.ndarray:
        v = self.levels * self.c + self.r
        if v.size:
            v[0] = self.x0
        return v

    def k_count(self, t: float) -> int:
        return int(np.searchsorted(self.taus, t, side="right") - 1)


def _check(path: SampledPath, c: float, r: float) -> Tuple[float, float]:
    if path.mode is not Mode.LINEAR:
        raise ModeError("Lebesgue partitions need a continuous (linear mode) path")
    c, r = float(c), float(r)
    if not c > 0:
        raise DomainError(f"c must be > 0, got {c!r}")
    if not 0 <= r < c:
        raise DomainError(f"shift r must lie in [0, c), got {r!r}")
    return c, r


def build_partition(path: SampledPath, c: float, r: float = 0.0, horizon: Optional[float] = None) -> LebesguePartition:
    c, r = _check(path, c, r)
    p = path if horizon is None or horizon >= path.horizon else as_interval(path, (0.0, horizon))
    taus, levels = _kernels.lebesgue_hits(np.ascontiguousarray(p.times),
                                          np.ascontiguousarray(p.values), c, r, SNAP_TOL)
    return LebesguePartition(c, r, taus, levels, float(p.values[0]))


def k_count(partition: LebesguePartition, t: float) -> int:
    return partition.k_count(t)


def psi_variation(path: SampledPath, partition: LebesguePartition, psi: PsiSpec, t: float) -> float:
    """``sum_k psi(|x_{tau_k ^ t} - x_{tau_{k-1} ^ t}|)``."""
    if path.mode is not Mode.LINEAR:
        raise ModeError("psi-variation along Lebesgue partitions needs a linear mode path")
    if t <= 0:
        return 0.0
    k = partition.k_count(t)
    vals = partition.tau_values[: k + 1]
    steps = np.abs(np.diff(vals))
    tail = abs(path.eval(t) - vals[-1])
    return float(np.sum(psi(steps)) + psi(tail))


def mean_psi_variation(path: SampledPath, c: float, psi: PsiSpec, t: float, n_shifts: int = 64) -> float:
    """Midpoint-rule average of ``psi_variation`` over shifts ``r = gamma*c``."""
    if n_shifts < 8:
        raise DomainError(f"n_shifts must be >= 8, got {n_shifts}")
    _check(path, c, 0.0)
    p = as_interval(path, (0.0, t)) if t < path.horizon else path
    total = 0.0
    for j in range(n_shifts):
        part = build_partition(p, c, (j + 0.5) / n_shifts * c)
        total += psi_variation(p, part, psi, p.horizon)
    return total / n_shifts


def pvar_along_lebesgue(path: SampledPath, p: int, gamma: float, b_seq: Sequence[float], t: float):
    """``V^{b, gamma*b}_p(x, [0, t])`` for every ``b`` in ``b_seq``."""
    if int(p) != p or p < 2:
        raise DomainError(f"p must be an integer >= 2, got {p!r}")
    if not 0 <= gamma < 1:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma!r}")
    psi = PsiSpec.power(p)
    sub = as_interval(path, (0.0, t)) if t < path.horizon else path
    out = []
    for b in b_seq:
        part = build_partition(sub, b, gamma * b)
        out.append(psi_variation(sub, part, psi, sub.horizon))
    return out
