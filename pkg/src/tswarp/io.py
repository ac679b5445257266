"""UCR-style TSV datasets and atomic CSV report writing."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .synthgen import LabeledDataset

__all__ = [
    "DataError",
    "ParseError",
    "RaggedRows",
    "EmptyFile",
    "EmptyDataset",
    "load_tsv",
    "save_tsv",
    "write_csv",
    "atomic_write",
]


class DataError(Exception):
    """Base class for problems with input data (CLI exit code 2)."""


class ParseError(DataError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


class RaggedRows(DataError):
    pass


class EmptyFile(DataError):
    pass


class EmptyDataset(DataError):
    pass


def _label(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_tsv(path) -> LabeledDataset:
    """Read ``label<TAB>v1<TAB>v2...`` lines (commas accepted instead of tabs)."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        lines = [(no, line.strip()) for no, line in enumerate(fh, start=1)]
    lines = [(no, line) for no, line in lines if line]
    if not lines:
        raise EmptyFile(f"{path}: no data")
    sep = "\t" if "\t" in lines[0][1] else ","
    first = [t.strip() for t in lines[0][1].split(sep)]
    if not all(_is_number(t) for t in first[1:]):
        lines = lines[1:]  # header
        if not lines:
            raise EmptyFile(f"{path}: header only")

    labels, rows, width = [], [], None
    for no, line in lines:
        tokens = [t.strip() for t in line.split(sep)]
        if len(tokens) < 3:
            raise ParseError(path, no, "need a label and at least 2 values")
        try:
            values = [float(t) for t in tokens[1:]]
        except ValueError as exc:
            raise ParseError(path, no, str(exc)) from None
        if not all(math.isfinite(v) for v in values):
            raise ParseError(path, no, "NaN or infinite value")
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise RaggedRows(f"{path}:{no}: expected {width} values, found {len(values)}")
        labels.append(_label(tokens[0]))
        rows.append(values)
    return LabeledDataset(np.array(rows), labels, meta={"source": str(path)})


def atomic_write(path, text: str) -> None:
    """Write ``text`` to a temp file next to ``path`` and rename it into place."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_tsv(ds: LabeledDataset | None, path) -> None:
    if ds is None or len(ds) == 0:
        raise EmptyDataset("refusing to write an empty dataset")
    lines = [
        "\t".join([str(label)] + [repr(float(v)) for v in row])
        for row, label in zip(ds.X, ds.labels)
    ]
    try:
        atomic_write(path, "\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def write_csv(path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    atomic_write(path, buf.getvalue())
