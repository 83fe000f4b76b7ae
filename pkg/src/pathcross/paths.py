"""Finite-sample carriers for real cadlag paths.

A :class:`SampledPath` is a pair of arrays plus an interpolation mode. In
``STEP`` mode the path is constant on ``[t_i, t_{i+1})``; in ``LINEAR`` mode it
interpolates consecutive samples and is continuous.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class CapacityError(RuntimeError):
    """Input too large for the requested (quadratic or memory-bound) method."""


class ModeError(DomainError):
    """Operation requires a different interpolation mode."""


class Mode(str, enum.Enum):
    STEP = "step"
    LINEAR = "linear"

    @classmethod
    def parse(cls, value: Union[str, "Mode"]) -> "Mode":
        if isinstance(value, Mode):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown mode {value!r}; expected 'step' or 'linear'") from None


@dataclass(frozen=True)
class JumpRecord:
    time: float
    delta: float


class SampledPath:
    """Immutable sampled path ``t -> x_t`` on ``[0, times[-1]]``."""

    __slots__ = ("_times", "_values", "_mode")

    def __init__(self, times, values, mode: Union[str, Mode] = Mode.LINEAR):
        t = np.array(times, dtype=np.float64).ravel()
        x = np.array(values, dtype=np.float64).ravel()
        if t.size == 0 or t.size != x.size:
            raise DomainError("times and values must be non-empty and of equal length")
        if t[0] != 0.0:
            raise DomainError(f"times must start at 0, got {t[0]!r}")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(x))):
            raise DomainError("times and values must be finite")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise DomainError("times must be strictly increasing (duplicate or unsorted sample times)")
        t.setflags(write=False)
        x.setflags(write=False)
        self._times = t
        self._values = x
        self._mode = Mode.parse(mode)

    # -- basic accessors -------------------------------------------------
    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def mode(self) -> Mode:
        return self._mode

    @property
    def horizon(self) -> float:
        return float(self._times[-1])

    def __len__(self) -> int:
        return self._times.size

    def __repr__(self) -> str:
        return f"SampledPath(n={len(self)}, horizon={self.horizon:g}, mode={self._mode.value})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SampledPath):
            return NotImplemented
        return (
            self._mode == other._mode
            and np.array_equal(self._times, other._times)
            and np.array_equal(self._values, other._values)
        )

    def __neg__(self) -> "SampledPath":
        return SampledPath(self._times, -self._values, self._mode)

    def scaled(self, factor: float) -> "SampledPath":
        return SampledPath(self._times, factor * self._values, self._mode)

    def with_mode(self, mode: Union[str, Mode]) -> "SampledPath":
        return SampledPath(self._times, self._values, mode)

    @classmethod
    def regular(cls, values, horizon: float = 1.0, mode: Union[str, Mode] = Mode.LINEAR) -> "SampledPath":
        """Equally spaced samples on ``[0, horizon]``."""
        values = np.asarray(values, dtype=np.float64)
        if values.size == 1:
            return cls([0.0], values, mode)
        return cls(np.linspace(0.0, horizon, values.size), values, mode)

    # -- evaluation --------------------------------------------------------
    def _check_t(self, t, left_open: bool = False) -> np.ndarray:
        arr = np.asarray(t, dtype=np.float64)
        lo_bad = arr <= 0.0 if left_open else arr < 0.0
        if np.any(lo_bad) or np.any(arr > self.horizon) or np.any(~np.isfinite(arr)):
            side = "(0" if left_open else "[0"
            raise DomainError(f"t={t!r} outside domain {side}, {self.horizon:g}]")
        return arr

    def eval(self, t):
        """Path value at ``t`` (right-continuous in step mode)."""
        arr = self._check_t(t)
        if self._mode is Mode.LINEAR:
            out = np.interp(arr, self._times, self._values)
        else:
            idx = np.searchsorted(self._times, arr, side="right") - 1
            out = self._values[idx]
        return float(out) if np.ndim(out) == 0 else out

    def left_limit(self, t):
        """``x_{t-}``; equals :meth:`eval` in linear mode."""
        arr = self._check_t(t, left_open=True)
        if self._mode is Mode.LINEAR:
            out = np.interp(arr, self._times, self._values)
        else:
            idx = np.searchsorted(self._times, arr, side="left") - 1
            out = self._values[idx]
        return float(out) if np.ndim(out) == 0 else out

    def jumps(self) -> List[JumpRecord]:
        if self._mode is Mode.LINEAR or len(self) < 2:
            return []
        d = np.diff(self._values)
        nz = np.nonzero(d)[0]
        return [JumpRecord(float(self._times[i + 1]), float(d[i])) for i in nz]

    def restrict(self, s: float, t: float) -> "SampledPath":
        """Path on ``[s, t]`` re-based to start at time 0."""
        if not (0.0 <= s < t <= self.horizon):
            raise DomainError(f"invalid interval [{s!r}, {t!r}] for horizon {self.horizon:g}")
        if s == 0.0 and t == self.horizon:
            return self
        times = self._times
        lo = np.searchsorted(times, s, side="right")
        hi = np.searchsorted(times, t, side="left")
        inner_t = times[lo:hi]
        inner_x = self._values[lo:hi]
        x_s = self.eval(s)
        new_t = np.concatenate(([s], inner_t, [t])) - s
        x_t = self.eval(t)
        new_x = np.concatenate(([x_s], inner_x, [x_t]))
        return SampledPath(new_t, new_x, self._mode)

    # -- io --------------------------------------------------------------------
    def to_csv(self, path: Union[str, Path], sidecar: bool = True) -> None:
        path = Path(path)
        data = np.column_stack((self._times, self._values))
        np.savetxt(path, data, fmt="%.17g", delimiter=",", header="t,x", comments="")
        if sidecar:
            sidecar_path(path).write_text(json.dumps({"mode": self._mode.value}))

    @classmethod
    def from_csv(cls, path: Union[str, Path], mode: Optional[Union[str, Mode]] = None) -> "SampledPath":
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"path file not found: {path}")
        with path.open() as fh:
            header = fh.readline().strip().replace(" ", "")
            if header != "t,x":
                raise DomainError(f"{path}: expected header 't,x', got {header!r}")
            data = np.loadtxt(fh, delimiter=",", ndmin=2, dtype=np.float64)
        if mode is None:
            sc = sidecar_path(path)
            mode = json.loads(sc.read_text())["mode"] if sc.is_file() else Mode.LINEAR
        if data.size == 0:
            raise DomainError(f"{path}: no samples")
        return cls(data[:, 0], data[:, 1], mode)


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_suffix(path.suffix + ".json")


def as_interval(path: SampledPath, interval=None) -> SampledPath:
    """Restrict ``path`` to ``interval`` (``None`` means the whole domain)."""
    if interval is None:
        return path
    s, t = interval
    return path.restrict(float(s), float(t))
