"""Extract the UCR Trace split bundled in the tslearn wheel into TSV files.

The UCR archive itself is not downloaded by this package.  tslearn ships a
cached copy of Trace, so this pulls the wheel through pip and converts it:

    python scripts/fetch_trace.py data/ucr
"""

import argparse
import io
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

import numpy as np

from tswarp.io import save_tsv
from tswarp.synthgen import LabeledDataset

MEMBER = "tslearn/.cached_datasets/Trace.npz"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--wheel", type=Path, help="use an already downloaded tslearn wheel")
    args = ap.parse_args(argv)

    with tempfile.TemporaryDirectory() as tmp:
        wheel = args.wheel
        if wheel is None:
            subprocess.run(
                [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", tmp, "tslearn"],
                check=True,
            )
            wheel = next(Path(tmp).glob("tslearn-*.whl"))
        with zipfile.ZipFile(wheel) as zf:
            data = np.load(io.BytesIO(zf.read(MEMBER)))

    target = args.out_dir / "Trace"
    target.mkdir(parents=True, exist_ok=True)
    for split, (X, y) in {
        "TRAIN": (data["X_train"], data["y_train"]),
        "TEST": (data["X_test"], data["Y_test"] if "Y_test" in data else data["y_test"]),
    }.items():
        ds = LabeledDataset(X[:, :, 0], [int(v) for v in y])
        save_tsv(ds, target / f"Trace_{split}.tsv")
        print(f"wrote {target / f'Trace_{split}.tsv'} ({len(ds)} series, length {ds.length})")


if __name__ == "__main__":
    main()
