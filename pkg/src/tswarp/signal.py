"""Signals sampled on the uniform grid over [0, 1].

A signal with ``N + 1`` samples is read as ``s(u_j)`` at ``u_j = j / N``.
Everything downstream (densities, transport maps, warps) lives on that grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Signal",
    "DerivativeDensity",
    "ZeroVariation",
    "as_samples",
    "grid",
    "spacing",
    "resample",
    "derivative",
    "derivative_density",
    "trapezoid",
    "equalize_lengths",
]


class ZeroVariation(ValueError):
    """Raised when a signal is (numerically) constant, so |s'| cannot be normalized."""


def as_samples(s) -> np.ndarray:
    """Return the samples of ``s`` as a 1-D float array, validating them."""
    if isinstance(s, Signal):
        return s.samples
    arr = np.asarray(s, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"signal must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError("signal needs at least 2 samples")
    if not np.all(np.isfinite(arr)):
        raise ValueError("signal contains NaN or infinite values")
    return arr


@dataclass(frozen=True)
class Signal:
    samples: np.ndarray

    def __post_init__(self):
        arr = as_samples(np.array(self.samples, dtype=float))
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return self.samples.size

    def __array__(self, dtype=None, copy=None):
        return self.samples if dtype is None else self.samples.astype(dtype)

    @property
    def grid(self) -> np.ndarray:
        return grid(self.samples.size)

    @property
    def step(self) -> float:
        return spacing(self.samples.size)


@dataclass(frozen=True)
class DerivativeDensity:
    """Normalized ``|s'|`` on the signal grid, together with its normalizer ``mass``."""

    values: np.ndarray
    mass: float

    @property
    def step(self) -> float:
        return spacing(self.values.size)


def grid(n_points: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, n_points)


def spacing(n_points: int) -> float:
    return 1.0 / (n_points - 1)


def trapezoid(values, step: float) -> float:
    values = np.asarray(values, dtype=float)
    return float(step * (values.sum() - 0.5 * (values[0] + values[-1])))


def resample(s, n_points: int) -> np.ndarray:
    """Piecewise-linear interpolation of ``s`` onto a uniform grid of ``n_points``."""
    if n_points < 2:
        raise ValueError(f"resample needs n_points >= 2, got {n_points}")
    x = as_samples(s)
    if x.size == n_points:
        return x.copy()
    out = np.interp(grid(n_points), grid(x.size), x)
    out[0], out[-1] = x[0], x[-1]
    return out


def equalize_lengths(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Resample the shorter of two signals onto the longer one's grid."""
    a, b = as_samples(a), as_samples(b)
    if a.size < b.size:
        a = resample(a, b.size)
    elif b.size < a.size:
        b = resample(b, a.size)
    return a, b


def derivative(s) -> np.ndarray:
    # central differences inside, one-sided at both ends
    x = as_samples(s)
    return np.gradient(x, spacing(x.size), edge_order=1)


def derivative_density(s) -> DerivativeDensity:
    x = as_samples(s)
    speed = np.abs(derivative(x))
    mass = trapezoid(speed, spacing(x.size))
    if mass <= 1e-12 * x.size:
        raise ZeroVariation("signal has no variation; its derivative density is undefined")
    return DerivativeDensity(values=speed / mass, mass=mass)
