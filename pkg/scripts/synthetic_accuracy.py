"""Low-sample accuracy on synthetic warped-template classes.

Two configurations: one atom per class and five atoms per class.  For each
seed a training pool and a disjoint test set are generated, then training is
subsampled to k items per class.

    python scripts/synthetic_accuracy.py --seeds 10 --out results/synthetic.csv
"""

import argparse
from pathlib import Path

import numpy as np

from tswarp.classifier import low_sample_sweep
from tswarp.io import write_csv
from tswarp.synthgen import SyntheticSpec, generate_dataset

COUNTS = [1, 2, 4, 8, 16, 32]


def run(atoms, seeds, metrics, repeats, length):
    per_atom = max(COUNTS) // atoms + (max(COUNTS) % atoms > 0)
    table = {}
    for seed in range(seeds):
        pool = generate_dataset(SyntheticSpec(2, atoms, per_atom, length, seed=1000 + seed))
        test = generate_dataset(SyntheticSpec(2, atoms, 100 // (2 * atoms) or 1, length, seed=2000 + seed))
        for p in low_sample_sweep(pool, test, COUNTS, repeats, metrics, seed=seed):
            table.setdefault((p.per_class, p.metric), []).append(p.mean_accuracy)
    return table


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--length", type=int, default=150)
    ap.add_argument("--metrics", default="euclidean,d_t,dtw")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    metrics = args.metrics.split(",")

    rows = []
    for atoms in (1, 5):
        table = run(atoms, args.seeds, metrics, args.repeats, args.length)
        print(f"\n{atoms} atom(s) per class")
        print("k".rjust(4) + "".join(m.rjust(12) for m in metrics))
        for k in COUNTS:
            means = [float(np.mean(table[(k, m)])) for m in metrics]
            print(str(k).rjust(4) + "".join(f"{v:12.3f}" for v in means))
            rows.extend((atoms, k, m, repr(v)) for m, v in zip(metrics, means))
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        write_csv(args.out, ("atoms", "per_class", "metric", "mean_accuracy"), rows)


if __name__ == "__main__":
    main()
