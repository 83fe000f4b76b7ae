"""Seeded process generators and exact constructors for deterministic test paths.

Processes (all on an equally spaced grid of ``n_samples`` steps over ``[0, T]``):

* ``bm`` and ``fbm``: exact Gaussian increments by circulant embedding, with
  ``Var(B_t - B_s) = |t - s|^{2H}``.
* ``stable``: symmetric strictly alpha-stable increments (Chambers-Mallows-Stuck),
  emitted in step mode.  ``alpha = 2`` gives ``N(0, 2)`` increments per unit time.
* ``rosenblatt``: a discretised off-diagonal double sum; approximate, meant for
  qualitative runs only.

Deterministic paths are built from closed-form sequence rules so that the
depth can be raised without re-specifying anything.
"""
from __future__ import annotations

import enum
import functools
import math
import warnings
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .paths import CapacityError, DomainError, Mode, SampledPath

MAX_EXAMPLE_SAMPLES = 40_000_000
CHOLESKY_MAX = 2048


def rng_for(seed: int, path_index: int = 0) -> np.random.Generator:
    """Counter-based stream keyed by ``(seed, path_index)``."""
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), int(path_index)])
    return np.random.Generator(np.random.Philox(ss))


# --------------------------------------------------------------------------
# stochastic processes

class ProcessKind(str, enum.Enum):
    BM = "bm"
    FBM = "fbm"
    STABLE = "stable"
    ROSENBLATT = "rosenblatt"


@dataclass(frozen=True)
class ProcessSpec:
    kind: ProcessKind
    n_samples: int = 1024
    horizon: float = 1.0
    seed: int = 0
    hurst: Optional[float] = None
    alpha: Optional[float] = None
    approx_grid: int = 256

    def __post_init__(self):
        object.__setattr__(self, "kind", ProcessKind(self.kind))
        if int(self.n_samples) < 1:
            raise DomainError(f"n_samples must be >= 1, got {self.n_samples!r}")
        if not self.horizon > 0:
            raise DomainError(f"horizon must be > 0, got {self.horizon!r}")
        k = self.kind
        if k is ProcessKind.FBM and not (self.hurst is not None and 0 < self.hurst < 1):
            raise DomainError(f"fbm needs hurst in (0, 1), got {self.hurst!r}")
        if k is ProcessKind.ROSENBLATT:
            if not (self.hurst is not None and 0.5 < self.hurst < 1):
                raise DomainError(f"rosenblatt needs hurst in (1/2, 1), got {self.hurst!r}")
            if self.approx_grid < 8:
                raise DomainError("rosenblatt approx_grid must be >= 8")
        if k is ProcessKind.STABLE and not (self.alpha is not None and 1 < self.alpha <= 2):
            raise DomainError(f"stable needs alpha in (1, 2], got {self.alpha!r}")

    @property
    def beta(self) -> float:
        """Self-similarity index."""
        if self.kind is ProcessKind.BM:
            return 0.5
        if self.kind is ProcessKind.STABLE:
            return 1.0 / self.alpha
        return float(self.hurst)

    @property
    def mode(self) -> Mode:
        return Mode.STEP if self.kind is ProcessKind.STABLE else Mode.LINEAR

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "n_samples": self.n_samples, "horizon": self.horizon,
                "seed": self.seed, "hurst": self.hurst, "alpha": self.alpha,
                "approx_grid": self.approx_grid}


def _fgn_autocov(n: int, hurst: float) -> np.ndarray:
    k = np.arange(n + 1, dtype=np.float64)
    h2 = 2.0 * hurst
    return 0.5 * ((k + 1) ** h2 - 2 * k ** h2 + np.abs(k - 1) ** h2)


@functools.lru_cache(maxsize=16)
def _circulant_sqrt(n: int, hurst: float):
    """Square roots of the circulant eigenvalues, or a Cholesky factor as fallback."""
    g = _fgn_autocov(n, hurst)
    row = np.concatenate((g, g[-2:0:-1]))
    lam = np.fft.fft(row).real
    if lam.min() >= -1e-10 * lam.max():
        return "fft", np.sqrt(np.clip(lam, 0.0, None) / row.size)
    if n > CHOLESKY_MAX:
        raise CapacityError(
            f"circulant embedding not positive for n={n}, H={hurst}; "
            f"covariance fallback limited to n <= {CHOLESKY_MAX}")
    idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    return "chol", np.linalg.cholesky(g[idx])


def fgn(n: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """``n`` unit-step fractional Gaussian noise values."""
    how, root = _circulant_sqrt(int(n), float(hurst))
    if how == "fft":
        m = root.size
        w = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        return np.fft.fft(root * w).real[:n]
    return root @ rng.standard_normal(n)


def stable_increments(n: int, alpha: float, rng: np.random.Generator) -> np.ndarray:
    """Symmetric strictly alpha-stable variates (unit scale) by the trigonometric transform."""
    v = rng.uniform(-np.pi / 2, np.pi / 2, n)
    w = rng.exponential(1.0, n)
    if alpha == 1.0:
        return np.tan(v)
    return (np.sin(alpha * v) / np.cos(v) ** (1 / alpha)
            * (np.cos((1 - alpha) * v) / w) ** ((1 - alpha) / alpha))


def _rosenblatt_values(spec: ProcessSpec, rng: np.random.Generator) -> np.ndarray:
    """Off-diagonal double sum over a kernel grid, rescaled to ``Var R_T = T^{2H}``."""
    n, T, H = spec.n_samples, spec.horizon, spec.hurst
    M = spec.approx_grid
    lead = 2.0 * T  # truncation of the infinite past
    du = (lead + T) / M
    u = -lead + (np.arange(M) + 0.5) * du
    xi = rng.standard_normal(M)
    s = (np.arange(n) + 0.5) * (T / n)
    expo = -(2.0 - H) / 2.0
    inc = np.empty(n)
    gram = np.zeros((M, M))
    chunk = max(1, 4_000_000 // M)
    for a in range(0, n, chunk):
        lag = s[a:a + chunk, None] - u[None, :]
        F = np.where(lag > 0, np.abs(lag) ** expo, 0.0) * math.sqrt(du)
        y = F @ xi
        inc[a:a + chunk] = (y * y - (F * F) @ (xi * xi)) * (T / n)
        gram += F.T @ F * (T / n)
    np.fill_diagonal(gram, 0.0)
    sd = math.sqrt(2.0 * np.sum(gram * gram))
    vals = np.concatenate(([0.0], np.cumsum(inc)))
    return vals * (T ** H / sd if sd > 0 else 1.0)


def simulate(spec: ProcessSpec, path_index: int = 0) -> SampledPath:
    rng = rng_for(spec.seed, path_index)
    n, T = int(spec.n_samples), float(spec.horizon)
    dt = T / n
    if spec.kind in (ProcessKind.BM, ProcessKind.FBM):
        if spec.kind is ProcessKind.BM or spec.hurst == 0.5:
            inc = rng.standard_normal(n) * math.sqrt(dt)
        else:
            inc = fgn(n, spec.hurst, rng) * dt ** spec.hurst
        vals = np.concatenate(([0.0], np.cumsum(inc)))
    elif spec.kind is ProcessKind.STABLE:
        inc = stable_increments(n, spec.alpha, rng) * dt ** (1.0 / spec.alpha)
        vals = np.concatenate(([0.0], np.cumsum(inc)))
    else:
        vals = _rosenblatt_values(spec, rng)
    return SampledPath(np.linspace(0.0, T, n + 1), vals, spec.mode)


def simulate_values(spec: ProcessSpec, n_paths: int, start: int = 0) -> np.ndarray:
    """``(n_paths, n_samples + 1)`` array of sample values for path indices ``start, ...``."""
    return np.stack([simulate(spec, start + i).values for i in range(n_paths)])


def scaling_ks(spec: ProcessSpec, A: float = 4.0, n_paths: int = 2000):
    """Two-sample KS test of ``A^{-beta} X_{AT}`` against ``X_T``.

    Both samples come from independent path indices; returns scipy's result.
    """
    from scipy.stats import ks_2samp

    if not A > 0:
        raise DomainError(f"A must be > 0, got {A!r}")
    wide = replace(spec, horizon=spec.horizon * A)
    base = np.array([simulate(spec, i).values[-1] for i in range(n_paths)])
    scaled = np.array([simulate(wide, n_paths + i).values[-1] for i in range(n_paths)])
    return ks_2samp(base, scaled * A ** -spec.beta)


# --------------------------------------------------------------------------
# Cantor set bookkeeping

def gap_left_ends(n: int) -> np.ndarray:
    """Left endpoints of the ``2^n`` middle-third gaps removed at step ``n``, sorted."""
    prefix = np.zeros(1)
    for i in range(1, n + 1):
        prefix = np.stack((prefix, prefix + 2.0 * 3.0 ** (-i)), axis=1).ravel()
    return prefix + 3.0 ** (-(n + 1))


def gap_levels(n: int) -> np.ndarray:
    """Value of the Cantor function on each step-``n`` gap: ``(2k + 1) / 2^{n+1}``."""
    return (2.0 * np.arange(2 ** n) + 1.0) / 2.0 ** (n + 1)


def cantor_function(t, depth: int = 40):
    """Devil's staircase via ternary digits, exact on every gap up to ``depth``."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr < 0) or np.any(arr > 1) or np.any(~np.isfinite(arr)):
        raise DomainError(f"t={t!r} outside [0, 1]")
    r = arr.copy()
    out = np.zeros_like(r)
    live = np.ones(r.shape, dtype=bool)
    scale = 0.5
    for _ in range(depth):
        r = r * 3.0
        d = np.floor(r)
        d = np.minimum(d, 2.0)
        r = r - d
        out = np.where(live & (d >= 1.0), out + scale, out)
        live &= d != 1.0
        scale *= 0.5
    out = np.where(arr == 1.0, 1.0, out)
    return float(out) if out.ndim == 0 else out


def k_n_count(t: float, n: int) -> int:
    """Number of step-``n`` gaps contained in ``[0, t]``."""
    t = float(t)
    if not 0 <= t <= 1:
        raise DomainError(f"t={t!r} outside [0, 1]")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if t == 1.0:
        return 2 ** n
    count = 0
    r = t
    for i in range(1, n + 1):
        r *= 3.0
        d = min(int(math.floor(r)), 2)
        r -= d
        if d == 1:
            return count + 2 ** (n - i)
        if d == 2:
            count += 2 ** (n - i)
    # first n ternary digits are all in {0, 2}: one more gap fits iff the next
    # digits reach the gap's right end 0.2 (ternary)
    return count + (1 if r >= 2.0 / 3.0 else 0)


# --------------------------------------------------------------------------
# deterministic examples

class ExampleKind(str, enum.Enum):
    EX1 = "1"
    EX2 = "2"
    EX3 = "3"
    CANTOR = "cantor"


def _rule(name: str):
    """Closed-form sequence rule ``n -> value`` plus two divergence flags:
    ``(sum a_n diverges, sum 2^n a_n diverges)``."""
    name = name.split(":", 1)[1] if name[:2] in ("a:", "b:") else name
    if name == "harmonic":
        return (lambda n: 1.0 / (np.asarray(n, dtype=float) + 1.0)), True, True
    if name == "invsqrt":
        return (lambda n: 1.0 / np.sqrt(np.asarray(n, dtype=float) + 1.0)), True, True
    if name == "pow2":
        return (lambda n: 2.0 ** (-np.asarray(n, dtype=float))), False, True
    if name.startswith("pow2floor"):
        _, _, p = name.partition("/")
        p = int(p or 1)
        if p < 1:
            raise DomainError(f"bad rule {name!r}")
        return (lambda n: 2.0 ** (-np.floor(np.asarray(n, dtype=float) / p))), True, True
    raise DomainError(f"unknown sequence rule {name!r}; expected harmonic, invsqrt, pow2 or pow2floor/p")


def t_seq(m):
    """Time grid ``t_m = m / (m + 1)`` accumulating at 1."""
    m = np.asarray(m, dtype=float)
    return m / (m + 1.0)


@dataclass(frozen=True)
class ExampleSpec:
    """Deterministic path recipe.

    ``rule`` gives ``a_n`` (examples 1 and 3) or ``b_n`` (example 2).  Example 3
    uses gap offsets ``m_n = m_base^{n+1}`` and includes, inside every gap, the
    zigzags with height ``>= c_min``.
    """

    which: ExampleKind
    rule: str = "harmonic"
    depth: int = 10
    m_base: int = 4
    c_min: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "which", ExampleKind(str(self.which).lower()))
        if self.depth < 1:
            raise DomainError(f"depth must be >= 1, got {self.depth}")
        if self.which is ExampleKind.CANTOR:
            return
        seq, div, div2 = _rule(self.rule)
        if self.which in (ExampleKind.EX1, ExampleKind.EX3) and not div:
            warnings.warn(f"rule {self.rule!r} is summable; the limit behaviour assumes a divergent sum",
                          stacklevel=3)
        if self.which is ExampleKind.EX2 and not div2:
            warnings.warn(f"rule {self.rule!r} makes sum 2^n b_n finite", stacklevel=3)
        if self.which is ExampleKind.EX3:
            if self.m_base < 2:
                raise DomainError("m_base must be >= 2")
            if self.c_min is None or not self.c_min > 0:
                raise DomainError("example 3 needs c_min > 0")
            s = self.gap_mass()
            if s >= 1.0:
                raise DomainError(f"sum 2^n a_(m_n) = {s:.6g} must be < 1")

    @property
    def seq(self):
        return _rule(self.rule)[0]

    def m(self, n):
        return np.asarray(self.m_base, dtype=float) ** (np.asarray(n, dtype=float) + 1.0)

    def gap_mass(self, levels: int = 60) -> float:
        """``sum_n 2^n a_{m_n}`` (converged numerically)."""
        n = np.arange(levels)
        return float(np.sum(2.0 ** n * self.seq(self.m(n))))

    def zigzags_per_gap(self, n: int) -> int:
        """Count ``L_n`` of zigzags with ``a_{m_n + l} >= c_min`` in a step-``n`` gap."""
        m = int(self.m(n))
        if self.seq(m) < self.c_min:
            return 0
        lo, hi = 0, 1
        while self.seq(m + hi) >= self.c_min:
            hi *= 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.seq(m + mid) >= self.c_min:
                lo = mid
            else:
                hi = mid
        return lo + 1

    def as_dict(self) -> dict:
        return {"which": self.which.value, "rule": self.rule, "depth": self.depth,
                "m_base": self.m_base, "c_min": self.c_min}


def _sorted_path(times: np.ndarray, values: np.ndarray) -> SampledPath:
    order = np.argsort(times, kind="stable")
    return SampledPath(times[order], values[order], Mode.LINEAR)


def _capacity(n: int) -> None:
    if n > MAX_EXAMPLE_SAMPLES:
        raise CapacityError(f"example would need {n} samples (limit {MAX_EXAMPLE_SAMPLES}); lower depth")


def _ex1(spec: ExampleSpec) -> SampledPath:
    d = spec.depth
    _capacity(2 * d + 2)
    m = np.arange(2 * d + 1)
    vals = np.zeros(m.size)
    vals[1::2] = spec.seq(np.arange(d))
    return SampledPath(np.append(t_seq(m), 1.0), np.append(vals, 0.0), Mode.LINEAR)


def _ex2(spec: ExampleSpec) -> SampledPath:
    total = 3 * (2 ** spec.depth - 1) + 2
    _capacity(total)
    ts = [np.array([0.0, 1.0])]
    xs = [np.array([0.0, 0.0])]
    for n in range(spec.depth):
        a = gap_left_ends(n)
        w = 3.0 ** (-(n + 1))
        ts.append((a[:, None] + np.array([0.0, 0.5, 1.0]) * w).ravel())
        xs.append(np.tile([0.0, float(spec.seq(n)), 0.0], a.size))
    return _sorted_path(np.concatenate(ts), np.concatenate(xs))


def _ex3(spec: ExampleSpec) -> SampledPath:
    counts = [spec.zigzags_per_gap(n) for n in range(spec.depth)]
    total = 2 + sum(2 ** n * (2 * L + 2) for n, L in enumerate(counts))
    _capacity(total)
    ts = [np.array([0.0, 1.0])]
    xs = [np.array([0.0, 1.0])]
    for n, L in enumerate(counts):
        a = gap_left_ends(n)
        z = gap_levels(n)
        w = 3.0 ** (-(n + 1))
        # zigzag l occupies [t_{2l}, t_{2l+2}] of the rescaled gap; flat afterwards
        rel_t = np.append(t_seq(np.arange(2 * L + 1)), 1.0)
        bumps = np.zeros(2 * L + 2)
        bumps[1:2 * L:2] = spec.seq(int(spec.m(n)) + np.arange(L))
        ts.append((a[:, None] + w * rel_t[None, :]).ravel())
        xs.append((z[:, None] + bumps[None, :]).ravel())
    return _sorted_path(np.concatenate(ts), np.concatenate(xs))


def _cantor(spec: ExampleSpec) -> SampledPath:
    _capacity(2 ** (spec.depth + 1) + 2)
    ts = [np.array([0.0, 1.0])]
    xs = [np.array([0.0, 1.0])]
    for n in range(spec.depth):
        a = gap_left_ends(n)
        z = gap_levels(n)
        w = 3.0 ** (-(n + 1))
        ts.append(np.concatenate((a, a + w)))
        xs.append(np.concatenate((z, z)))
    return _sorted_path(np.concatenate(ts), np.concatenate(xs))


def example_path(spec: ExampleSpec) -> SampledPath:
    build = {ExampleKind.EX1: _ex1, ExampleKind.EX2: _ex2,
             ExampleKind.EX3: _ex3, ExampleKind.CANTOR: _cantor}[spec.which]
    return build(spec)


@dataclass(frozen=True)
class ClosedFormTV:
    """Truncated variation over ``[0, 1]`` from the sequence terms: ``value`` sums
    the terms present in the built path, ``tail`` the omitted ones."""

    c: float
    value: float
    tail: float


def _positive_part_sum(seq, c: float, start: int, weight=None, cap: int = 10 ** 8) -> float:
    """``sum_{n >= start} w_n (seq(n) - c)_+`` for a non-increasing ``seq``."""
    if seq(start) <= c:
        return 0.0
    hi = start + 1
    while seq(hi) > c:
        hi = start + 2 * (hi - start)
        if hi - start > cap:
            raise CapacityError("tail sum does not terminate; c too small for this rule")
    n = np.arange(start, hi)
    terms = np.clip(seq(n) - c, 0.0, None)
    if weight is not None:
        terms = terms * weight(n)
    return float(np.sum(terms))


def closed_form_tv(spec: ExampleSpec, c: float) -> ClosedFormTV:
    c = float(c)
    if not c > 0:
        raise DomainError(f"c must be > 0, got {c!r}")
    seq, d = spec.seq, spec.depth
    if spec.which is ExampleKind.EX1:
        n = np.arange(d)
        value = 2.0 * float(np.sum(np.clip(seq(n) - c, 0.0, None)))
        return ClosedFormTV(c, value, 2.0 * _positive_part_sum(seq, c, d))
    if spec.which is ExampleKind.EX2:
        n = np.arange(d)
        value = float(np.sum(2.0 ** (n + 1) * np.clip(seq(n) - c, 0.0, None)))
        return ClosedFormTV(c, value, _positive_part_sum(seq, c, d, weight=lambda k: 2.0 ** (k + 1)))
    if spec.which is ExampleKind.EX3:
        value = tail = 0.0
        n = 0
        while True:
            m = int(spec.m(n))
            if seq(m) <= c and n >= d:
                break
            L = spec.zigzags_per_gap(n) if n < d else 0
            inside = float(np.sum(np.clip(seq(m + np.arange(L)) - c, 0.0, None)))
            value += 2.0 ** (n + 1) * inside
            tail += 2.0 ** (n + 1) * _positive_part_sum(seq, c, m + L)
            n += 1
        return ClosedFormTV(c, value, tail)
    raise DomainError("no closed form for the Cantor staircase")


def admissible_c(spec: ExampleSpec) -> float:
    """Smallest ``c`` at which the built path carries every term with ``(term - c)_+ > 0``."""
    if spec.which is ExampleKind.EX1 or spec.which is ExampleKind.EX2:
        return float(spec.seq(spec.depth))
    if spec.which is ExampleKind.EX3:
        return max(float(spec.c_min), float(spec.seq(spec.m(spec.depth))))
    raise DomainError("no truncation parameter for the Cantor staircase")


def depth_for(spec: ExampleSpec) -> int:
    """Example 3 depth below which gaps carry no zigzag of height ``>= c_min``."""
    n = 0
    while spec.seq(spec.m(n)) >= spec.c_min:
        n += 1
    return max(n, 1)


def limit_reference(spec: ExampleSpec, g, t: float) -> float:
    """Limit of the normalised crossing integral for the deterministic examples."""
    from .testfunctions import parse_g

    g = parse_g(g)
    t = float(t)
    if spec.which is ExampleKind.EX1:
        return float(g(0.0)) if t >= 1.0 else 0.0
    if spec.which is ExampleKind.EX2:
        return float(g(0.0)) * cantor_function(t)
    if spec.which is ExampleKind.EX3:
        return float(g.integral(0.0, cantor_function(t)))
    raise DomainError("no limit reference for the Cantor staircase")
