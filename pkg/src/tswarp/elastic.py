"""Dynamic time warping, plain and arc-length weighted.

Paths use the step set ``{(1,0), (0,1), (1,1)}``.  The plain objective sums
``|s[i] - phi[j]|`` over every visited cell including ``(0, 0)``.  The weighted
objective charges each *step* ``|s[i] - phi[j]| * (di + dj) / N`` at the cell it
lands on, so the start cell carries no weight and diagonal steps count double;
this is a Riemann sum of the continuous line integral along the path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .signal import as_samples

__all__ = [
    "AdmissibilityError",
    "DiscretePath",
    "DtwResult",
    "dtw",
    "dtw_weighted",
    "dtw_cost",
    "brute_force_dtw",
    "evaluate_path",
    "check_path",
]

_STEPS = ((1, 1), (1, 0), (0, 1))  # backtracking preference on ties


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class DiscretePath:
    steps: tuple[tuple[int, int], ...]
    weights: tuple[float, ...]  # one per step, i.e. len(steps) - 1 entries

    @property
    def length(self) -> int:
        return len(self.steps) - 1


@dataclass(frozen=True)
class DtwResult:
    cost: float
    path: DiscretePath


def _step_weights(steps, n: int) -> tuple[float, ...]:
    return tuple(
        ((i1 - i0) + (j1 - j0)) / n for (i0, j0), (i1, j1) in zip(steps[:-1], steps[1:])
    )


def check_path(path: DiscretePath, n: int, m: int) -> None:
    """Raise AdmissibilityError unless ``path`` is a warping path from (0,0) to (n,m)."""
    steps = path.steps
    if not steps or tuple(steps[0]) != (0, 0) or tuple(steps[-1]) != (n, m):
        raise AdmissibilityError(f"path must run from (0, 0) to ({n}, {m})")
    for (i0, j0), (i1, j1) in zip(steps[:-1], steps[1:]):
        if (i1 - i0, j1 - j0) not in _STEPS:
            raise AdmissibilityError(f"illegal step ({i0}, {j0}) -> ({i1}, {j1})")
    if not min(n, m) <= path.length <= n + m:
        raise AdmissibilityError(f"path length {path.length} out of range")
    if len(path.weights) != path.length:
        raise AdmissibilityError("need one weight per step")


@numba.njit(cache=True, nogil=True)
def _table(s, phi, weighted):
    n, m = s.size, phi.size
    scale = 1.0 / (n - 1)
    D = np.empty((n, m))
    D[0, 0] = 0.0 if weighted else abs(s[0] - phi[0])
    for j in range(1, m):
        c = abs(s[0] - phi[j])
        D[0, j] = D[0, j - 1] + (c * scale if weighted else c)
    for i in range(1, n):
        c = abs(s[i] - phi[0])
        D[i, 0] = D[i - 1, 0] + (c * scale if weighted else c)
        for j in range(1, m):
            c = abs(s[i] - phi[j])
            if weighted:
                diag = D[i - 1, j - 1] + c * (2.0 * scale)
                up = D[i - 1, j] + c * scale
                left = D[i, j - 1] + c * scale
            else:
                diag = D[i - 1, j - 1] + c
                up = D[i - 1, j] + c
                left = D[i, j - 1] + c
            best = diag
            if up < best:
                best = up
            if left < best:
                best = left
            D[i, j] = best
    return D


@numba.njit(cache=True, nogil=True)
def _cost(s, phi, weighted):
    # two rolling rows; same recurrence and addition order as _table
    n, m = s.size, phi.size
    scale = 1.0 / (n - 1)
    prev = np.empty(m)
    cur = np.empty(m)
    prev[0] = 0.0 if weighted else abs(s[0] - phi[0])
    for j in range(1, m):
        c = abs(s[0] - phi[j])
        prev[j] = prev[j - 1] + (c * scale if weighted else c)
    for i in range(1, n):
        c = abs(s[i] - phi[0])
        cur[0] = prev[0] + (c * scale if weighted else c)
        for j in range(1, m):
            c = abs(s[i] - phi[j])
            if weighted:
                diag = prev[j - 1] + c * (2.0 * scale)
                up = prev[j] + c * scale
                left = cur[j - 1] + c * scale
            else:
                diag = prev[j - 1] + c
                up = prev[j] + c
                left = cur[j - 1] + c
            best = diag
            if up < best:
                best = up
            if left < best:
                best = left
            cur[j] = best
        prev, cur = cur, prev
    return prev[m - 1]


def _backtrack(D: np.ndarray, s: np.ndarray, phi: np.ndarray, weighted: bool):
    n, m = D.shape
    scale = 1.0 / (n - 1)
    i, j = n - 1, m - 1
    steps = [(i, j)]
    while (i, j) != (0, 0):
        c = abs(s[i] - phi[j])
        best = None
        for di, dj in _STEPS:
            pi, pj = i - di, j - dj
            if pi < 0 or pj < 0:
                continue
            w = (di + dj) * scale if weighted else 1.0
            if D[pi, pj] + c * w == D[i, j]:
                best = (pi, pj)
                break
        if best is None:  # cannot happen for a table built by _table
            raise RuntimeError("DTW backtracking lost the optimal path")
        i, j = best
        steps.append(best)
    steps.reverse()
    return tuple(steps)


def _run(s, phi, weighted: bool) -> DtwResult:
    s, phi = as_samples(s), as_samples(phi)
    if weighted and s.size != phi.size:
        raise ValueError("weighted DTW is defined for equal-length signals")
    D = _table(s, phi, weighted)
    steps = _backtrack(D, s, phi, weighted)
    return DtwResult(float(D[-1, -1]), DiscretePath(steps, _step_weights(steps, s.size - 1)))


def dtw(s, phi) -> DtwResult:
    return _run(s, phi, weighted=False)


def dtw_weighted(s, phi) -> DtwResult:
    return _run(s, phi, weighted=True)


def dtw_cost(s, phi, weighted: bool = False) -> float:
    """DTW value only, in O(M) memory."""
    s, phi = as_samples(s), as_samples(phi)
    if weighted and s.size != phi.size:
        raise ValueError("weighted DTW is defined for equal-length signals")
    return float(_cost(s, phi, weighted))


def evaluate_path(s, phi, path: DiscretePath, weighted: bool = False) -> float:
    s, phi = as_samples(s), as_samples(phi)
    check_path(path, s.size - 1, phi.size - 1)
    steps = path.steps
    if weighted:
        total = 0.0
        for (i, j), w in zip(steps[1:], path.weights):
            total += abs(s[i] - phi[j]) * w
        return total
    total = abs(s[0] - phi[0])
    for i, j in steps[1:]:
        total += abs(s[i] - phi[j])
    return total


def brute_force_dtw(s, phi, weighted: bool = False) -> float:
    """Exhaustive minimum over every admissible path (test oracle, tiny inputs only)."""
    s, phi = as_samples(s), as_samples(phi)
    n, m = s.size - 1, phi.size - 1
    if n + m > 12:
        raise ValueError(f"brute force limited to N + M <= 12, got {n + m}")
    if weighted and n != m:
        raise ValueError("weighted DTW is defined for equal-length signals")

    # plain floats: the same IEEE arithmetic as the DP, without numpy scalar overhead
    cost = [[abs(a - b) for b in phi.tolist()] for a in s.tolist()]
    best = np.inf

    def walk(i, j, acc):
        nonlocal best
        if i == n and j == m:
            if acc < best:
                best = acc
            return
        for di, dj in _STEPS:
            a, b = i + di, j + dj
            if a > n or b > m:
                continue
            c = cost[a][b]
            walk(a, b, acc + (c * ((di + dj) / n) if weighted else c))

    walk(0, 0, 0.0 if weighted else cost[0][0])
    return float(best)
