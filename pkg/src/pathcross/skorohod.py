"""Two-sided reflection on constant barriers and the regularization ``x^c``.

``phi = x + eta_d - eta_u`` is kept inside ``[alpha, beta]``; ``x - phi`` is a
piecewise monotone path whose upward and downward moves are the pushes booked
at the lower and upper barrier.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import _kernels
from .paths import DomainError, SampledPath


@dataclass(frozen=True)
class SkorohodSolution:
    phi: SampledPath
    eta_d: SampledPath
    eta_u: SampledPath
    regularization: SampledPath
    barriers: Tuple[float, float]
    phi0: float

    @property
    def eta_d_total(self) -> float:
        return float(self.eta_d.values[-1])

    @property
    def eta_u_total(self) -> float:
        return float(self.eta_u.values[-1])


def skorohod_map(path: SampledPath, alpha: float, beta: float, phi0: float) -> SkorohodSolution:
    alpha, beta, phi0 = float(alpha), float(beta), float(phi0)
    if not beta - alpha > 0:
        raise DomainError(f"degenerate barriers [{alpha!r}, {beta!r}]")
    if not alpha <= phi0 <= beta:
        raise DomainError(f"phi0={phi0!r} outside [{alpha!r}, {beta!r}]")
    x = np.ascontiguousarray(path.values)
    phi, ed, eu = _kernels.skorohod_clamp(x, alpha, beta, phi0)
    t, mode = path.times, path.mode
    return SkorohodSolution(
        phi=SampledPath(t, phi, mode),
        eta_d=SampledPath(t, ed, mode),
        eta_u=SampledPath(t, eu, mode),
        regularization=SampledPath(t, x - phi, mode),
        barriers=(alpha, beta),
        phi0=phi0,
    )


def start_offset(x: np.ndarray, c: float) -> float:
    """Initial ``phi0`` aligning the reflection with the first move larger than ``c``.

    Before the first such move the path stays in a band ``[lo, hi]`` of width
    at most ``c``.  Placing that band flush against the barrier the move heads
    away from makes ``x^c`` start at the extreme that opens the first
    truncated-variation leg, so ``x^c_t - x^c_0 = UTV^c - DTV^c`` at every t.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    legs = _kernels.c_legs(x, c)
    if legs.size == 0:
        return float(x[0] - (x.min() + x.max()) / 2)
    if legs[1] > legs[0]:
        return float(x[0] - legs[0] - c / 2)
    return float(x[0] - legs[0] + c / 2)


def regularize_solution(path: SampledPath, c: float) -> SkorohodSolution:
    c = float(c)
    if not c > 0:
        raise DomainError(f"c must be > 0, got {c!r}")
    phi0 = start_offset(path.values, c)
    phi0 = float(np.clip(phi0, -c / 2, c / 2))
    return skorohod_map(path, -c / 2, c / 2, phi0)


def regularize(path: SampledPath, c: float) -> SampledPath:
    """Piecewise monotone ``x^c`` with ``|x - x^c| <= c/2``."""
    return regularize_solution(path, c).regularization
