"""One-dimensional optimal transport between derivative densities, and d_T.

The transport map from density ``a`` to density ``b`` is ``F_b^dagger o F_a``,
where ``F^dagger(y) = inf{x : F(x) > y}`` (with ``inf {} = b``) is the
generalized inverse.  The divergence compares ``s`` with ``phi`` pulled back
along the map between their normalized ``|s'|`` and ``|phi'|``::

    d_T(s, phi)^2 = int_0^1 |s(x) - phi(g(x))|^2 sqrt(g'(x)) dx
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .signal import (
    DerivativeDensity,
    as_samples,
    derivative_density,
    equalize_lengths,
    grid,
    spacing,
    trapezoid,
)

__all__ = [
    "MonotoneFunction",
    "TransportMap",
    "cdf_from_density",
    "quantile",
    "generalized_inverse",
    "transport_map",
    "push_forward_residual",
    "wasserstein2",
    "d_t",
    "PreparedSignal",
    "prepare",
    "prepare_many",
    "cdf_rows",
    "d_t_row",
    "d_t_prepared",
]


@dataclass(frozen=True)
class MonotoneFunction:
    """Right-continuous, non-decreasing, piecewise-linear function.

    Between knots the function is linear.  A repeated x-knot encodes a jump:
    the function takes the value of the *last* knot sharing that abscissa.
    Outside ``[knots_x[0], knots_x[-1]]`` it is extended by constants.
    """

    knots_x: np.ndarray
    knots_y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.knots_x, dtype=float)
        y = np.asarray(self.knots_y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 2:
            raise ValueError("knots_x and knots_y must be 1-D arrays of equal length >= 2")
        if np.any(np.diff(x) < 0) or np.any(np.diff(y) < 0):
            raise ValueError("knots must be non-decreasing in both coordinates")
        object.__setattr__(self, "knots_x", x)
        object.__setattr__(self, "knots_y", y)

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.knots_x[0]), float(self.knots_x[-1])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        xs, ys = self.knots_x, self.knots_y
        n = xs.size
        k = np.searchsorted(xs, t, side="right") - 1
        inner = (k >= 0) & (k < n - 1)
        kk = np.clip(k, 0, n - 2)
        x0, x1 = xs[kk], xs[kk + 1]
        width = np.where(inner, x1 - x0, 1.0)
        theta = np.where(inner, (t - x0) / width, 0.0)
        out = ys[kk] + theta * (ys[kk + 1] - ys[kk])
        out = np.where(k < 0, ys[0], out)
        out = np.where(k >= n - 1, ys[-1], out)
        return out if out.ndim else float(out)

    def is_continuous_at(self, t: float) -> bool:
        xs, ys = self.knots_x, self.knots_y
        hit = np.flatnonzero(xs == t)
        return hit.size < 2 or ys[hit[0]] == ys[hit[-1]]


@dataclass(frozen=True)
class TransportMap:
    """Monotone map ``g`` on the signal grid plus its clamped finite-difference slope."""

    g: MonotoneFunction
    slope: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.g.knots_y

    def __call__(self, t):
        return self.g(t)


def _cumulative(values: np.ndarray, step: float) -> np.ndarray:
    out = np.empty_like(values)
    out[0] = 0.0
    np.cumsum(0.5 * step * (values[1:] + values[:-1]), out=out[1:])
    return out


def _cdf_values(density: np.ndarray, step: float) -> np.ndarray:
    c = _cumulative(density, step)
    c /= c[-1]
    np.clip(c, 0.0, 1.0, out=c)
    c[0], c[-1] = 0.0, 1.0
    return c


def cdf_from_density(d: DerivativeDensity) -> MonotoneFunction:
    values = np.asarray(d.values, dtype=float)
    return MonotoneFunction(grid(values.size), _cdf_values(values, spacing(values.size)))


def quantile(F: MonotoneFunction, y):
    """Evaluate ``F^dagger(y) = inf{x : F(x) > y}`` directly from the knots of ``F``."""
    y = np.asarray(y, dtype=float)
    xs, ys = F.knots_x, F.knots_y
    n = xs.size
    k = np.searchsorted(ys, y, side="right")  # first knot with F > y
    kk = np.clip(k, 1, n - 1)
    y0, y1 = ys[kk - 1], ys[kk]
    rise = np.where(y1 > y0, y1 - y0, 1.0)
    out = xs[kk - 1] + (y - y0) / rise * (xs[kk] - xs[kk - 1])
    out = np.where(k == 0, xs[0], out)
    out = np.where(k >= n, xs[-1], out)  # inf of the empty set is the right end
    return out if out.ndim else float(out)


def generalized_inverse(F: MonotoneFunction) -> MonotoneFunction:
    """Return ``F^dagger`` as a function: flats of ``F`` become jumps and vice versa."""
    new_x, new_y = F.knots_y, F.knots_x
    # inside a run of equal abscissae only the first and last knots matter
    keep = np.ones(new_x.size, dtype=bool)
    same_prev = np.r_[False, new_x[1:] == new_x[:-1]]
    same_next = np.r_[new_x[:-1] == new_x[1:], False]
    keep &= ~(same_prev & same_next)
    return MonotoneFunction(new_x[keep], new_y[keep])


def _slope(g: np.ndarray, step: float) -> np.ndarray:
    return np.maximum(np.gradient(g, step, edge_order=1), 0.0)


def transport_map(src: DerivativeDensity, dst: DerivativeDensity) -> TransportMap:
    F_src = cdf_from_density(src)
    F_dst = cdf_from_density(dst)
    if F_src.knots_x.size != F_dst.knots_x.size:
        raise ValueError("densities must live on the same grid")
    g = np.clip(quantile(F_dst, F_src.knots_y), 0.0, 1.0)
    g = np.maximum.accumulate(g)
    return TransportMap(MonotoneFunction(F_src.knots_x, g), _slope(g, spacing(g.size)))


def _exact_cdf(d: DerivativeDensity, t: np.ndarray) -> np.ndarray:
    # integral of the piecewise-linear interpolant of the density, not a
    # linear interpolation of its knot CDF
    b = np.asarray(d.values, dtype=float)
    n = b.size
    step = spacing(n)
    cum = _cumulative(b, step)
    total = cum[-1]
    u = np.clip(np.asarray(t, dtype=float), 0.0, 1.0) / step
    k = np.minimum(np.floor(u).astype(int), n - 2)
    theta = u - k
    part = step * (b[k] * theta + 0.5 * (b[k + 1] - b[k]) * theta**2)
    return (cum[k] + part) / total


def push_forward_residual(g: TransportMap, src: DerivativeDensity, dst: DerivativeDensity) -> float:
    """Sup-norm defect of ``F_dst(g(t)) = F_src(t)`` over the grid."""
    t = grid(np.asarray(src.values).size)
    lhs = _exact_cdf(dst, g(t))
    rhs = _exact_cdf(src, t)
    return float(np.max(np.abs(lhs - rhs)))


def wasserstein2(src: DerivativeDensity, dst: DerivativeDensity) -> float:
    F_a = cdf_from_density(src)
    F_b = cdf_from_density(dst)
    n = max(F_a.knots_x.size, F_b.knots_x.size)
    q = np.unique(np.concatenate([F_a.knots_y, F_b.knots_y, np.linspace(0.0, 1.0, 2 * n + 1)]))
    diff = quantile(F_a, q) - quantile(F_b, q)
    w2 = float(np.sum(0.5 * (diff[1:] ** 2 + diff[:-1] ** 2) * np.diff(q)))
    return float(np.sqrt(max(w2, 0.0)))


def d_t(s, phi) -> float:
    """Transport divergence from ``s`` to ``phi``; not symmetric.

    Raises ZeroVariation if either signal is constant.
    """
    s, phi = equalize_lengths(s, phi)
    tm = transport_map(derivative_density(s), derivative_density(phi))
    x = grid(s.size)
    warped = np.interp(tm.values, x, phi)
    integrand = (s - warped) ** 2 * np.sqrt(tm.slope)
    return float(np.sqrt(max(trapezoid(integrand, spacing(s.size)), 0.0)))


@dataclass(frozen=True)
class PreparedSignal:
    """Samples with their derivative-density CDF, cached for repeated d_T calls."""

    samples: np.ndarray
    cdf: np.ndarray


def prepare(s) -> PreparedSignal:
    x = as_samples(s)
    d = derivative_density(x)
    return PreparedSignal(x, _cdf_values(d.values, spacing(x.size)))


def cdf_rows(X) -> tuple[np.ndarray, np.ndarray]:
    """Derivative-density CDFs of every row of ``X`` and a mask of non-constant rows."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n = X.shape[1]
    step = spacing(n)
    speed = np.abs(np.gradient(X, step, axis=1, edge_order=1))
    cum = np.zeros_like(speed)
    np.cumsum(0.5 * step * (speed[:, 1:] + speed[:, :-1]), axis=1, out=cum[:, 1:])
    mass = cum[:, -1]
    ok = mass > 1e-12 * n
    cdf = cum / np.where(ok, mass, 1.0)[:, None]
    np.clip(cdf, 0.0, 1.0, out=cdf)
    cdf[:, 0], cdf[:, -1] = 0.0, 1.0
    return cdf, ok


def prepare_many(X) -> list[PreparedSignal | None]:
    """Vectorized :func:`prepare` over the rows of ``X``; constant rows give ``None``."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    cdf, ok = cdf_rows(X)
    return [PreparedSignal(X[i], cdf[i]) if ok[i] else None for i in range(X.shape[0])]


@numba.njit(cache=True, nogil=True)
def _d_t_kernel(s, F_s, phi, F_phi):
    n = s.size
    step = 1.0 / (n - 1)
    g = np.empty(n)
    running = 0.0
    for j in range(n):
        y = F_s[j]
        lo, hi = 0, n  # first index with F_phi > y
        while lo < hi:
            mid = (lo + hi) >> 1
            if F_phi[mid] > y:
                hi = mid
            else:
                lo = mid + 1
        if lo == 0:
            v = 0.0
        elif lo >= n:
            v = 1.0
        else:
            y0 = F_phi[lo - 1]
            y1 = F_phi[lo]
            v = ((lo - 1) + (y - y0) / (y1 - y0)) * step
        if v < running:
            v = running
        if v > 1.0:
            v = 1.0
        running = v
        g[j] = v
    acc = 0.0
    for j in range(n):
        if j == 0:
            slope = (g[1] - g[0]) / step
        elif j == n - 1:
            slope = (g[n - 1] - g[n - 2]) / step
        else:
            slope = (g[j + 1] - g[j - 1]) / (2.0 * step)
        if slope < 0.0:
            slope = 0.0
        pos = g[j] / step
        k = int(pos)
        if k > n - 2:
            k = n - 2
        theta = pos - k
        warped = phi[k] + theta * (phi[k + 1] - phi[k])
        term = (s[j] - warped) ** 2 * np.sqrt(slope)
        if j == 0 or j == n - 1:
            term *= 0.5
        acc += term
    acc *= step
    if acc < 0.0:
        acc = 0.0
    return np.sqrt(acc)


@numba.njit(cache=True, nogil=True)
def _d_t_row_kernel(s, F_s, X, F, valid):
    out = np.empty(X.shape[0])
    for i in range(X.shape[0]):
        out[i] = _d_t_kernel(s, F_s, X[i], F[i]) if valid[i] else np.inf
    return out


def d_t_row(s: PreparedSignal, X: np.ndarray, F: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """d_T from ``s`` to each row of ``X`` (CDFs ``F`` from :func:`cdf_rows`); invalid rows give inf."""
    return _d_t_row_kernel(s.samples, s.cdf, X, F, valid)


def d_t_prepared(s: PreparedSignal, phi: PreparedSignal) -> float:
    """d_T on precomputed CDFs; same value as :func:`d_t` on equal-length inputs."""
    if s.samples.size != phi.samples.size:
        return d_t(s.samples, phi.samples)
    return float(_d_t_kernel(s.samples, s.cdf, phi.samples, phi.cdf))
