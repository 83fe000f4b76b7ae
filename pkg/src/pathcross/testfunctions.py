"""Test functions ``g`` with closed-form integrals over intervals.

Grammar accepted by :func:`parse_g` (CLI and JSON)::

    poly:a0,a1,...    g(y) = sum_k a_k y^k
    indicator:a,b     g(y) = 1 on [a, b]
    gauss:mu,sigma    g(y) = exp(-(y - mu)^2 / (2 sigma^2))
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.special import erf

from .paths import DomainError


class GSpecError(DomainError):
    """Unparseable or unsupported test-function specification."""


class TestFunction:
    spec: str = ""

    def __call__(self, y):
        raise NotImplementedError

    def integral(self, a, b):
        """``int_a^b g(y) dy`` (signed; vectorised over ``a`` and ``b``)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Poly(TestFunction):
    coeffs: Tuple[float, ...]

    @property
    def spec(self) -> str:
        return "poly:" + ",".join(repr(float(a)) for a in self.coeffs)

    def __call__(self, y):
        return np.polynomial.polynomial.polyval(y, self.coeffs)

    def integral(self, a, b):
        anti = np.polynomial.polynomial.polyint(self.coeffs)
        pv = np.polynomial.polynomial.polyval
        return pv(b, anti) - pv(a, anti)


@dataclass(frozen=True)
class Indicator(TestFunction):
    lo: float
    hi: float

    @property
    def spec(self) -> str:
        return f"indicator:{self.lo!r},{self.hi!r}"

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return ((y >= self.lo) & (y <= self.hi)).astype(float)

    def integral(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        overlap = np.clip(np.minimum(hi, self.hi) - np.maximum(lo, self.lo), 0.0, None)
        return np.where(b >= a, overlap, -overlap)


@dataclass(frozen=True)
class Gauss(TestFunction):
    mu: float
    sigma: float

    @property
    def spec(self) -> str:
        return f"gauss:{self.mu!r},{self.sigma!r}"

    def __call__(self, y):
        z = (np.asarray(y, dtype=float) - self.mu) / self.sigma
        return np.exp(-0.5 * z * z)

    def integral(self, a, b):
        s = self.sigma * math.sqrt(2.0)
        k = self.sigma * math.sqrt(math.pi / 2.0)
        return k * (erf((np.asarray(b) - self.mu) / s) - erf((np.asarray(a) - self.mu) / s))


class IntervalUnion(TestFunction):
    """Indicator of a finite union of closed intervals (merged on construction)."""

    def __init__(self, intervals: Sequence[Tuple[float, float]]):
        iv = sorted((float(a), float(b)) for a, b in intervals if b > a)
        merged = []
        for a, b in iv:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        self.starts = np.array([m[0] for m in merged])
        self.ends = np.array([m[1] for m in merged])
        # cumulative covered length up to the start of each interval
        self._cum = np.concatenate(([0.0], np.cumsum(self.ends - self.starts)))

    @property
    def spec(self) -> str:
        return f"union:{len(self.starts)}"

    def measure(self) -> float:
        return float(self._cum[-1])

    def complement_within(self, lo: float, hi: float) -> "IntervalUnion":
        pieces = []
        cur = lo
        for a, b in zip(self.starts, self.ends):
            if b <= lo or a >= hi:
                continue
            if a > cur:
                pieces.append((cur, min(a, hi)))
            cur = max(cur, b)
        if cur < hi:
            pieces.append((cur, hi))
        return IntervalUnion(pieces)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        i = np.searchsorted(self.starts, y, side="right") - 1
        inside = (i >= 0) & (y <= self.ends[np.clip(i, 0, None)])
        return inside.astype(float)

    def _cdf(self, y):
        y = np.asarray(y, dtype=float)
        i = np.searchsorted(self.starts, y, side="right") - 1
        ic = np.clip(i, 0, None)
        partial = np.clip(y - self.starts[ic], 0.0, self.ends[ic] - self.starts[ic]) if self.starts.size else 0.0
        out = np.where(i >= 0, self._cum[ic] + partial, 0.0)
        return out

    def integral(self, a, b):
        if self.starts.size == 0:
            return np.zeros(np.broadcast(np.asarray(a), np.asarray(b)).shape)
        return self._cdf(b) - self._cdf(a)


ZERO = Poly((0.0,))
ONE = Poly((1.0,))


def parse_g(spec) -> TestFunction:
    if isinstance(spec, TestFunction):
        return spec
    if not isinstance(spec, str) or ":" not in spec:
        raise GSpecError(f"bad test-function spec {spec!r}; expected kind:args")
    kind, _, args = spec.partition(":")
    try:
        nums = [float(a) for a in args.split(",") if a.strip() != ""]
    except ValueError:
        raise GSpecError(f"non-numeric argument in {spec!r}") from None
    kind = kind.strip().lower()
    if kind == "poly":
        if not nums:
            raise GSpecError("poly needs at least one coefficient")
        return Poly(tuple(nums))
    if kind == "indicator":
        if len(nums) != 2 or nums[1] < nums[0]:
            raise GSpecError(f"indicator needs a,b with a <= b, got {args!r}")
        return Indicator(nums[0], nums[1])
    if kind == "gauss":
        if len(nums) != 2 or nums[1] <= 0:
            raise GSpecError(f"gauss needs mu,sigma with sigma > 0, got {args!r}")
        return Gauss(nums[0], nums[1])
    raise GSpecError(f"unsupported test function kind {kind!r}")
