"""1-nearest-neighbour classification over pluggable dissimilarities."""

from __future__ import annotations

import logging
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .elastic import dtw_cost
from .signal import ZeroVariation, as_samples, equalize_lengths, resample
from .synthgen import LabeledDataset, SyntheticSpec, generate_dataset
from .transport import cdf_rows, d_t_row, prepare, prepare_many

log = logging.getLogger(__name__)

__all__ = [
    "KINDS",
    "Dissimilarity",
    "EvalReport",
    "SweepPoint",
    "TimingRow",
    "DegenerateCorrelation",
    "distance_row",
    "nn_classify",
    "evaluate",
    "low_sample_sweep",
    "pearson",
    "accuracy_correlation",
    "timing_benchmark",
]

KINDS = ("euclidean", "dtw", "dtw_weighted", "d_t")
_ALIASES = {"dt": "d_t", "d_T": "d_t", "l2": "euclidean", "dtw_w": "dtw_weighted"}


@dataclass(frozen=True)
class Dissimilarity:
    kind: str
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown dissimilarity {self.kind!r}; choose from {KINDS}")
        object.__setattr__(self, "kind", kind)

    @classmethod
    def of(cls, d) -> "Dissimilarity":
        return d if isinstance(d, cls) else cls(str(d))


@dataclass
class EvalReport:
    dataset: str
    metric: str
    accuracy: float
    predictions: list
    true_labels: list
    distances: list[float]
    fallbacks: list[int]  # test items whose d_T was undefined (Euclidean used)
    seconds: float
    train_size: int
    test_size: int
    seed: int | None = None

    @property
    def correct(self) -> int:
        return sum(p == t for p, t in zip(self.predictions, self.true_labels))


@dataclass(frozen=True)
class SweepPoint:
    per_class: int
    metric: str
    mean_accuracy: float
    accuracies: tuple[float, ...]


@dataclass(frozen=True)
class TimingRow:
    length: int
    train_size: int
    metric: str
    seconds: float


class DegenerateCorrelation(ValueError):
    """Pearson correlation is undefined because one of the inputs has zero variance."""


_UNPREPARED = object()


class _Index:
    """Training signals with whatever per-item precomputation a metric needs."""

    def __init__(self, train: LabeledDataset, d: Dissimilarity):
        self.X = np.ascontiguousarray(train.X)
        self.labels = train.labels
        self.kind = d.kind
        if d.kind == "d_t":
            self.cdf, self.valid = cdf_rows(self.X)

    def queries(self, X: np.ndarray) -> list:
        """Pair each test signal with its d_T preparation, computed in one batch."""
        if self.kind == "d_t" and X.shape[1] == self.X.shape[1]:
            return list(zip(X, prepare_many(X)))
        return [(x, _UNPREPARED) for x in X]

    def row(self, signal, prepared=_UNPREPARED) -> tuple[np.ndarray, bool]:
        x = as_samples(signal)
        kind = self.kind
        if kind == "d_t":
            if prepared is _UNPREPARED:
                try:
                    prepared = prepare(_match(x, self.X.shape[1]))
                except ZeroVariation:
                    prepared = None
            if prepared is None:
                return _euclidean_row(x, self.X), True
            return d_t_row(prepared, self.X, self.cdf, self.valid), False
        if kind == "euclidean":
            return _euclidean_row(x, self.X), False
        if kind == "dtw":
            return np.array([dtw_cost(x, y) for y in self.X]), False
        x = _match(x, self.X.shape[1])
        return np.array([dtw_cost(x, y, weighted=True) for y in self.X]), False


def _match(x: np.ndarray, length: int) -> np.ndarray:
    return x if x.size == length else resample(x, length)


def _euclidean_row(x: np.ndarray, X: np.ndarray) -> np.ndarray:
    if x.size != X.shape[1]:
        return np.array([np.linalg.norm(np.subtract(*equalize_lengths(x, y))) for y in X])
    return np.sqrt(np.sum((X - x) ** 2, axis=1))


def distance_row(train: LabeledDataset, signal, d) -> np.ndarray:
    """Dissimilarity from ``signal`` to every training item, in training order."""
    return _Index(train, Dissimilarity.of(d)).row(signal)[0]


def _nearest(index: _Index, signal, prepared=_UNPREPARED):
    row, fallback = index.row(signal, prepared)
    j = int(np.argmin(row))  # first minimum: lowest training index wins ties
    return index.labels[j], float(row[j]), fallback


def nn_classify(train: LabeledDataset, test_signal, d):
    """Label of the training item closest to ``test_signal``.

    For d_T the orientation is ``d_T(test_signal, train_item)``.
    """
    return _nearest(_Index(train, Dissimilarity.of(d)), test_signal)[0]


def _workers(threads) -> int:
    if threads in (None, "auto"):
        return os.cpu_count() or 1
    return max(1, int(threads))


def evaluate(
    train: LabeledDataset,
    test: LabeledDataset,
    d,
    name: str = "",
    threads="auto",
    seed: int | None = None,
) -> EvalReport:
    d = Dissimilarity.of(d)
    start = time.perf_counter()
    index = _Index(train, d)
    workers = _workers(threads)
    queries = index.queries(test.X)
    if workers == 1:
        results = [_nearest(index, x, p) for x, p in queries]
    else:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda q: _nearest(index, *q), queries))
    seconds = time.perf_counter() - start
    predictions = [r[0] for r in results]
    fallbacks = [i for i, r in enumerate(results) if r[2]]
    if fallbacks:
        log.warning("%s: d_T undefined for %d test item(s); used Euclidean", name or "dataset", len(fallbacks))
    correct = sum(p == t for p, t in zip(predictions, test.labels))
    return EvalReport(
        dataset=name,
        metric=d.kind,
        accuracy=correct / len(test),
        predictions=predictions,
        true_labels=list(test.labels),
        distances=[r[1] for r in results],
        fallbacks=fallbacks,
        seconds=seconds,
        train_size=len(train),
        test_size=len(test),
        seed=seed,
    )


def _by_class(labels) -> dict:
    groups: dict = {}
    for i, label in enumerate(labels):
        groups.setdefault(label, []).append(i)
    return groups


def low_sample_sweep(
    train: LabeledDataset,
    test: LabeledDataset,
    per_class: Sequence[int],
    repeats: int,
    metrics: Sequence,
    seed: int,
    threads="auto",
) -> list[SweepPoint]:
    """Mean 1-NN accuracy when only ``k`` random training items per class are kept.

    Every metric sees the same subsample within a repeat.
    """
    groups = _by_class(train.labels)
    smallest = min(len(v) for v in groups.values())
    for k in per_class:
        if not 1 <= k <= smallest:
            raise ValueError(f"per_class={k} exceeds the smallest class size ({smallest})")
    metrics = [Dissimilarity.of(m) for m in metrics]
    rng = np.random.default_rng(seed)
    acc = {(k, m.kind): [] for k in per_class for m in metrics}
    for _ in range(repeats):
        for k in per_class:
            chosen = sorted(
                int(i) for members in groups.values() for i in rng.choice(members, size=k, replace=False)
            )
            sub = train.subset(chosen)
            for m in metrics:
                acc[(k, m.kind)].append(evaluate(sub, test, m, threads=threads).accuracy)
    return [
        SweepPoint(k, m.kind, float(np.mean(acc[(k, m.kind)])), tuple(acc[(k, m.kind)]))
        for k in per_class
        for m in metrics
    ]


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("need two equally long sequences with at least 2 points")
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateCorrelation("one accuracy vector is constant")
    return float(np.clip((dx @ dy) / np.sqrt(sxx * syy), -1.0, 1.0))


def accuracy_correlation(pairs) -> float:
    """Pearson coefficient over paired accuracies (EvalReports or plain numbers)."""

    def value(v):
        return v.accuracy if isinstance(v, EvalReport) else float(v)

    pairs = list(pairs)
    return pearson([value(a) for a, _ in pairs], [value(b) for _, b in pairs])


def _warm_up(metrics):
    # trigger numba compilation outside the timed region
    tiny = generate_dataset(SyntheticSpec(2, 1, 2, 16, seed=0))
    for m in metrics:
        evaluate(tiny, tiny, m, threads=1)


def timing_benchmark(
    lengths: Sequence[int],
    train_sizes: Sequence[int],
    metrics: Sequence,
    seed: int,
    total_signals: int = 250,
    repeats: int = 5,
) -> list[TimingRow]:
    """Median wall time of a full sequential 1-NN run per (length, train size, metric).

    Data are two single-atom synthetic classes of ``total_signals`` signals;
    ``train_sizes`` count training items per class and the rest are tested.
    """
    metrics = [Dissimilarity.of(m) for m in metrics]
    _warm_up(metrics)
    rows = []
    per_class = total_signals // 2
    for length in lengths:
        data = generate_dataset(SyntheticSpec(2, 1, per_class, int(length), seed=seed))
        groups = _by_class(data.labels)
        for k in train_sizes:
            if not 1 <= k < per_class:
                raise ValueError(f"train size {k} leaves no test items")
            train_idx = sorted(i for members in groups.values() for i in members[:k])
            test_idx = sorted(set(range(len(data))) - set(train_idx))
            train, test = data.subset(train_idx), data.subset(test_idx)
            for m in metrics:
                times = []
                for _ in range(repeats):
                    t0 = time.perf_counter()
                    evaluate(train, test, m, threads=1)
                    times.append(time.perf_counter() - t0)
                rows.append(TimingRow(int(length), int(k), m.kind, statistics.median(times)))
    return rows
