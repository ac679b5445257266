"""Piecewise-linear monotone test functions and a bisection oracle for inf{x : F(x) > y}.

The oracle evaluates knots with its own scalar routine so it shares no code
with ``tswarp.transport``.
"""

import bisect

import numpy as np

from tswarp.transport import MonotoneFunction


def scalar_eval(xs, ys, t):
    """Right-continuous piecewise-linear evaluation; repeated x means a jump."""
    if t < xs[0]:
        return ys[0]
    k = bisect.bisect_right(xs, t) - 1
    if k >= len(xs) - 1:
        return ys[-1]
    return ys[k] + (t - xs[k]) / (xs[k + 1] - xs[k]) * (ys[k + 1] - ys[k])


def inf_above(f, y, lo, hi, iters=80):
    """inf{x in [lo, hi] : f(x) > y} for non-decreasing right-continuous f, inf of {} = hi."""
    if f(lo) > y:
        return lo
    if f(hi) <= y:
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) > y:
            hi = mid
        else:
            lo = mid
    return hi


def random_monotone(seed: int) -> MonotoneFunction:
    """Random mix of rising, flat and jump pieces on [0, 1]."""
    rng = np.random.default_rng(seed)
    pieces = rng.choice(["rise", "flat", "jump"], size=int(rng.integers(3, 9)), p=[0.5, 0.25, 0.25])
    xs, ys = [0.0], [float(rng.uniform(-1, 1))]
    for kind in pieces:
        dx = 0.0 if kind == "jump" else float(rng.uniform(0.05, 1.0))
        dy = 0.0 if kind == "flat" else float(rng.uniform(0.05, 1.0))
        if kind == "jump" and len(xs) > 1 and xs[-1] == xs[-2]:
            dx = float(rng.uniform(0.05, 1.0))  # no double jump at one abscissa
        xs.append(xs[-1] + dx)
        ys.append(ys[-1] + dy)
    xs = np.array(xs) / xs[-1]
    return MonotoneFunction(xs, np.array(ys))


def catalog(n: int = 24) -> list[MonotoneFunction]:
    fixed = [
        MonotoneFunction([0.0, 1.0], [0.0, 1.0]),
        MonotoneFunction(np.linspace(0, 1, 41), np.linspace(0, 1, 41) ** 2),
        MonotoneFunction([0.0, 0.5, 1.0], [0.0, 0.0, 1.0]),           # flat start
        MonotoneFunction([0.0, 0.3, 0.3, 1.0], [0.0, 0.3, 0.7, 1.0]),  # jump
        MonotoneFunction([0.0, 0.2, 0.6, 0.6, 0.8, 1.0], [0.0, 0.5, 0.5, 0.8, 0.8, 1.0]),
    ]
    return fixed + [random_monotone(seed) for seed in range(n - len(fixed))]


def strictly_right_increasing(F: MonotoneFunction, x: float) -> bool:
    xs, ys = list(F.knots_x), list(F.knots_y)
    k = bisect.bisect_right(xs, x) - 1
    return 0 <= k < len(xs) - 1 and ys[k + 1] > ys[k]


def continuity_point(F: MonotoneFunction, x: float) -> bool:
    return F.is_continuous_at(x)
