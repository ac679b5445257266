"""Command line entry point: ``tswarp <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import classifier as clf
from .io import DataError, load_tsv, save_tsv, write_csv
from .signal import ZeroVariation
from .synthgen import SyntheticSpec, generate_dataset

log = logging.getLogger("tswarp")

CLI_NAMES = {"euclidean": "euclidean", "dtw": "dtw", "dtw_weighted": "dtw_weighted", "d_t": "dt"}
METRIC_CHOICES = ("euclidean", "dtw", "dt", "dtw_weighted")

CLASSIFY_HEADER = ("item_index", "true_label", "predicted_label", "distance")
BENCH_HEADER = ("dataset", "metric", "accuracy", "seconds", "train_size", "test_size")
LOWSAMPLE_HEADER = ("per_class", "metric", "mean_accuracy", "std_accuracy", "repeats")
CORR_HEADER = ("x", "y", "n", "pearson")
TIMING_HEADER = ("length", "train_size", "metric", "seconds")


class UsageError(Exception):
    def __init__(self, message: str, usage: str):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _metric_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in METRIC_CHOICES]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown metric(s) {bad}; choose from {', '.join(METRIC_CHOICES)}")
    return names


def _threads(text: str):
    if text not in ("auto", "1"):
        raise argparse.ArgumentTypeError("--threads takes 'auto' or '1'")
    return text if text == "auto" else 1


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TSWARP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TSWARP_SEED must be an integer, got {env!r}", "") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tswarp", description="Elastic and transport dissimilarities for 1-NN time-series classification.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="generate a synthetic warped-template dataset as TSV")
    s.add_argument("--classes", type=int, required=True)
    s.add_argument("--atoms", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--roughness", type=float, default=0.5)
    s.add_argument("--warp-knots", type=int, default=6)
    s.add_argument("--out", type=Path, required=True)

    c = sub.add_parser("classify", help="1-NN classify a test TSV against a train TSV")
    c.add_argument("--train", type=Path, required=True)
    c.add_argument("--test", type=Path, required=True)
    c.add_argument("--metric", choices=METRIC_CHOICES, required=True)
    c.add_argument("--out", type=Path, required=True)
    c.add_argument("--threads", type=_threads, default="auto")

    b = sub.add_parser("bench", help="run every metric on <Name>_TRAIN/_TEST.tsv pairs under a directory")
    b.add_argument("--data-dir", type=Path, required=True)
    b.add_argument("--metrics", type=_metric_list, required=True)
    b.add_argument("--out", type=Path, required=True)
    b.add_argument("--threads", type=_threads, default="auto")

    lo = sub.add_parser("lowsample", help="accuracy with k random training items per class")
    lo.add_argument("--train", type=Path, required=True)
    lo.add_argument("--test", type=Path, required=True)
    lo.add_argument("--per-class", type=_int_list, required=True)
    lo.add_argument("--repeats", type=int, required=True)
    lo.add_argument("--metrics", type=_metric_list, required=True)
    lo.add_argument("--seed", type=int)
    lo.add_argument("--out", type=Path, required=True)
    lo.add_argument("--threads", type=_threads, default="auto")

    r = sub.add_parser("corr", help="Pearson correlation between two metric columns of a bench report")
    r.add_argument("--report", type=Path, required=True)
    r.add_argument("--cols", type=_metric_list, required=True)
    r.add_argument("--out", type=Path, required=True)

    t = sub.add_parser("timing", help="wall time of sequential 1-NN runs on synthetic data")
    t.add_argument("--lengths", type=_int_list, required=True)
    t.add_argument("--train-sizes", type=_int_list, required=True)
    t.add_argument("--metrics", type=_metric_list, required=True)
    t.add_argument("--seed", type=int)
    t.add_argument("--total-signals", type=int, default=250)
    t.add_argument("--repeats", type=int, default=5)
    t.add_argument("--out", type=Path, required=True)
    return p


def _fmt(x) -> str:
    return repr(float(x))


def cmd_simulate(args) -> int:
    spec = SyntheticSpec(
        num_classes=args.classes,
        atoms_per_class=args.atoms,
        samples_per_atom=args.samples,
        grid_size=args.length,
        warp_knots=args.warp_knots,
        warp_roughness=args.roughness,
        seed=_seed(args),
    )
    ds = generate_dataset(spec)
    save_tsv(ds, args.out)
    log.info("wrote %d signals to %s", len(ds), args.out)
    return 0


def cmd_classify(args) -> int:
    train, test = load_tsv(args.train), load_tsv(args.test)
    report = clf.evaluate(train, test, args.metric, name=args.test.stem, threads=args.threads)
    rows = [
        (i, t, p, _fmt(d))
        for i, (t, p, d) in enumerate(zip(report.true_labels, report.predictions, report.distances))
    ]
    write_csv(args.out, CLASSIFY_HEADER, rows)
    print(f"accuracy {report.accuracy:.4f} ({report.correct}/{report.test_size}) in {report.seconds:.3f}s")
    return 0


def _find_pairs(data_dir: Path):
    for sub in sorted(p for p in data_dir.iterdir() if p.is_dir()):
        trains = sorted(sub.glob("*_TRAIN.tsv"))
        if not trains:
            yield sub.name, None, None
            continue
        for train in trains:
            name = train.name[: -len("_TRAIN.tsv")]
            yield name, train, sub / f"{name}_TEST.tsv"


def cmd_bench(args) -> int:
    if not args.data_dir.is_dir():
        raise DataError(f"{args.data_dir} is not a directory")
    rows = []
    for name, train_path, test_path in _find_pairs(args.data_dir):
        try:
            if train_path is None:
                raise DataError(f"no *_TRAIN.tsv file in {args.data_dir / name}")
            train, test = load_tsv(train_path), load_tsv(test_path)
            done = []
            for m in args.metrics:
                report = clf.evaluate(train, test, m, name=name, threads=args.threads)
                done.append((name, m, _fmt(report.accuracy), _fmt(report.seconds), len(train), len(test)))
                log.info("%s %s accuracy %.4f", name, m, report.accuracy)
        except (DataError, OSError, ValueError) as exc:
            # one bad dataset never aborts the run
            log.error("skipping %s: %s", name, exc)
            rows.extend((name, m, "nan", "nan", 0, 0) for m in args.metrics)
            continue
        rows.extend(done)
    write_csv(args.out, BENCH_HEADER, rows)
    return 0


def cmd_lowsample(args) -> int:
    train, test = load_tsv(args.train), load_tsv(args.test)
    points = clf.low_sample_sweep(
        train, test, args.per_class, args.repeats, args.metrics, _seed(args), threads=args.threads
    )
    rows = []
    for p in points:
        std = float(np.std(p.accuracies))
        rows.append((p.per_class, CLI_NAMES[p.metric], _fmt(p.mean_accuracy), _fmt(std), len(p.accuracies)))
    write_csv(args.out, LOWSAMPLE_HEADER, rows)
    return 0


def read_bench(path: Path) -> dict[str, dict[str, float]]:
    table: dict[str, dict[str, float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = {"dataset", "metric", "accuracy"} - set(reader.fieldnames or ())
        if missing:
            raise DataError(f"{path}: missing column(s) {sorted(missing)}")
        for row in reader:
            acc = float(row["accuracy"])
            if math.isfinite(acc):
                table.setdefault(row["dataset"], {})[row["metric"]] = acc
    return table


def cmd_corr(args) -> int:
    if len(args.cols) != 2:
        raise UsageError("--cols needs exactly two metric names", "")
    x, y = args.cols
    table = read_bench(args.report)
    pairs = [(v[x], v[y]) for v in table.values() if x in v and y in v]
    if len(pairs) < 3:
        raise DataError(f"need at least 3 datasets with both {x} and {y}, found {len(pairs)}")
    try:
        rho = _fmt(clf.accuracy_correlation(pairs))
    except clf.DegenerateCorrelation as exc:
        log.warning("%s", exc)
        rho = "nan"
    write_csv(args.out, CORR_HEADER, [(x, y, len(pairs), rho)])
    print(f"pearson({x}, {y}) = {rho} over {len(pairs)} datasets")
    return 0


def cmd_timing(args) -> int:
    rows = clf.timing_benchmark(
        args.lengths, args.train_sizes, args.metrics, _seed(args),
        total_signals=args.total_signals, repeats=args.repeats,
    )
    write_csv(
        args.out, TIMING_HEADER,
        [(r.length, r.train_size, CLI_NAMES[r.metric], _fmt(r.seconds)) for r in rows],
    )
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "bench": cmd_bench,
    "lowsample": cmd_lowsample,
    "corr": cmd_corr,
    "timing": cmd_timing,
}


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tswarp: error: {exc}", file=sys.stderr)
        if exc.usage:
            print(exc.usage, file=sys.stderr, end="")
        return 1
    except (DataError, ZeroVariation, OSError, ValueError) as exc:
        print(f"tswarp: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
