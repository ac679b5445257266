"""Wall time of sequential 1-NN runs versus training size and signal length.

    python scripts/timing_study.py --out results/timing.csv
"""

import argparse
from pathlib import Path

from tswarp.classifier import timing_benchmark
from tswarp.io import write_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    metrics = ["euclidean", "d_t", "dtw"]

    sweep = timing_benchmark([150], [1, 2, 4, 8, 16, 32], metrics, seed=0, repeats=args.repeats)
    print("train/class" + "".join(m.rjust(12) for m in metrics))
    for k in (1, 2, 4, 8, 16, 32):
        t = {r.metric: r.seconds for r in sweep if r.train_size == k}
        print(str(k).rjust(11) + "".join(f"{t[m]:12.4f}" for m in metrics))

    scaling = timing_benchmark([256, 512, 1024], [2], metrics, seed=0, total_signals=40, repeats=args.repeats)
    t = {(r.metric, r.length): r.seconds for r in scaling}
    print("\nT(2N)/T(N)")
    for m in metrics:
        print(f"{m:>10}  256->512 {t[(m, 512)] / t[(m, 256)]:5.2f}   512->1024 {t[(m, 1024)] / t[(m, 512)]:5.2f}")

    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        write_csv(
            args.out, ("length", "train_size", "metric", "seconds"),
            [(r.length, r.train_size, r.metric, repr(r.seconds)) for r in sweep + scaling],
        )


if __name__ == "__main__":
    main()
