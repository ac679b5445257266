"""Synthetic classes built from templates and random monotone time warps.

Each class is a union of atomic classes; an atom is one smooth template and
every sample of it is ``template o g`` for a random non-decreasing ``g`` with
``g(0) = 0`` and ``g(1) = 1``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Iterator

import numpy as np

from .signal import grid

__all__ = [
    "WarpFunction",
    "SyntheticSpec",
    "LabeledDataset",
    "random_warp",
    "apply_warp",
    "template_catalog",
    "generate_dataset",
    "identity_warp",
]


@dataclass(frozen=True)
class WarpFunction:
    knots_x: np.ndarray
    knots_y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.knots_x, dtype=float)
        y = np.asarray(self.knots_y, dtype=float)
        if x.shape != y.shape or x.size < 2:
            raise ValueError("warp needs matching knot arrays with at least 2 knots")
        if x[0] != 0.0 or x[-1] != 1.0 or y[0] != 0.0 or y[-1] != 1.0:
            raise ValueError("warp must fix both endpoints of [0, 1]")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(y) < 0):
            raise ValueError("warp knots must be increasing in x and non-decreasing in y")
        object.__setattr__(self, "knots_x", x)
        object.__setattr__(self, "knots_y", y)

    def __call__(self, t):
        return np.interp(t, self.knots_x, self.knots_y)

    @property
    def flat_segments(self) -> int:
        return int(np.sum(np.diff(self.knots_y) == 0))


def identity_warp() -> WarpFunction:
    return WarpFunction(np.array([0.0, 1.0]), np.array([0.0, 1.0]))


@dataclass(frozen=True)
class SyntheticSpec:
    num_classes: int = 2
    atoms_per_class: int = 1
    samples_per_atom: int = 32
    grid_size: int = 150
    warp_knots: int = 6
    warp_roughness: float = 0.5
    seed: int = 0
    flat_segments: bool = False

    def __post_init__(self):
        for name in ("num_classes", "atoms_per_class", "samples_per_atom", "warp_knots"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.grid_size < 16:
            raise ValueError("grid_size must be >= 16")
        if not 0.0 <= self.warp_roughness <= 1.0:
            raise ValueError("warp_roughness must lie in [0, 1]")


@dataclass
class LabeledDataset:
    """Equal-length signals (rows of ``X``) with class and optional atom labels."""

    X: np.ndarray
    labels: list
    atoms: list | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=float))
        self.labels = list(self.labels)
        if self.X.shape[0] == 0 or self.X.shape[0] != len(self.labels):
            raise ValueError("dataset needs one label per signal and at least one signal")
        if self.atoms is not None and len(self.atoms) != len(self.labels):
            raise ValueError("atom labels must match signals")

    def __len__(self):
        return self.X.shape[0]

    def __iter__(self) -> Iterator[tuple]:
        atoms = self.atoms if self.atoms is not None else [None] * len(self)
        return iter(zip(self.X, self.labels, atoms))

    @property
    def length(self) -> int:
        return self.X.shape[1]

    @property
    def classes(self) -> list:
        return sorted(set(self.labels), key=_label_key)

    def subset(self, index) -> "LabeledDataset":
        index = list(index)
        atoms = None if self.atoms is None else [self.atoms[i] for i in index]
        return LabeledDataset(self.X[index], [self.labels[i] for i in index], atoms, dict(self.meta))


def _label_key(label):
    return (isinstance(label, str), label)


def random_warp(
    warp_knots: int,
    roughness: float,
    rng: np.random.Generator,
    allow_flat: bool = False,
) -> WarpFunction:
    """Piecewise-linear warp with ``warp_knots`` segments on a uniform x-grid.

    Segment rises are Gamma draws with unit mean and coefficient of variation
    ``roughness`` (all equal when it is 0).  With ``allow_flat`` one interior
    segment is flattened with probability ``roughness / 2``.
    """
    if warp_knots < 2:
        raise ValueError("warp_knots must be >= 2")
    if roughness < 1e-8:
        # below this the Gamma shape overflows; the draws would be equal anyway
        rises = np.ones(warp_knots)
    else:
        shape = 1.0 / roughness**2
        rises = rng.gamma(shape, 1.0 / shape, size=warp_knots)
    if allow_flat and warp_knots >= 3 and rng.random() < roughness / 2:
        rises[rng.integers(1, warp_knots - 1)] = 0.0
    y = np.concatenate([[0.0], np.cumsum(rises)])
    y /= y[-1]
    y[-1] = 1.0
    return WarpFunction(np.linspace(0.0, 1.0, warp_knots + 1), y)


def apply_warp(s, g: WarpFunction) -> np.ndarray:
    """Samples of ``s o g`` on the grid of ``s`` (linear interpolation)."""
    s = np.asarray(s, dtype=float)
    x = grid(s.size)
    return np.interp(g(x), x, s)


# bump amplitudes in time order; the first entries are hand-picked so that
# no two share the same sequence of extreme values (which warps cannot change)
_PATTERNS = [
    (1.0,),
    (-1.0,),
    (1.0, -1.0),
    (-1.0, 1.0),
    (1.0, 1.0),
    (-1.0, -1.0),
    (1.0, -0.5, 1.0),
    (-1.0, 0.5, -1.0),
    (0.5, -1.0, 0.5),
    (1.0, 1.0, -1.0),
    (-0.6, -0.6, 1.0),
    (1.0, -1.0, 1.0, -1.0),
]
_BUMP_WIDTH = 0.07


def _pattern(index: int) -> tuple[float, ...]:
    if index < len(_PATTERNS):
        return _PATTERNS[index]
    rng = np.random.default_rng(10_000 + index)
    count = int(rng.integers(2, 5))
    return tuple(np.round(rng.choice([-1.0, -0.5, 0.5, 1.0], size=count), 2))


def _bumps(pattern, x: np.ndarray) -> np.ndarray:
    centers = [0.5] if len(pattern) == 1 else np.linspace(0.2, 0.8, len(pattern))
    out = np.zeros_like(x)
    for amp, c in zip(pattern, centers):
        out += amp * np.exp(-0.5 * ((x - c) / _BUMP_WIDTH) ** 2)
    return out


def template_catalog(k: int, grid_size: int) -> list[np.ndarray]:
    """``k`` deterministic Gaussian-bump templates sampled on ``grid_size`` points."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x = grid(grid_size)
    return [_bumps(_pattern(i), x) for i in range(k)]


def generate_dataset(spec: SyntheticSpec) -> LabeledDataset:
    n_atoms = spec.num_classes * spec.atoms_per_class
    templates = template_catalog(n_atoms, spec.grid_size)
    # one independent stream per atom: stream index = class * atoms + atom
    streams = np.random.SeedSequence(spec.seed).spawn(n_atoms)
    X, labels, atoms = [], [], []
    for c in range(spec.num_classes):
        for m in range(spec.atoms_per_class):
            idx = c * spec.atoms_per_class + m
            rng = np.random.default_rng(streams[idx])
            for _ in range(spec.samples_per_atom):
                g = random_warp(spec.warp_knots, spec.warp_roughness, rng, spec.flat_segments)
                X.append(apply_warp(templates[idx], g))
                labels.append(c)
                atoms.append(m)
    return LabeledDataset(np.array(X), labels, atoms, {"source": "synthetic", "spec": asdict(spec)})
