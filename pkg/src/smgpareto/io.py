"""CSV/JSON artifact writers and the matching readers.

Floats are written with 17 significant digits so that reading a file back
reproduces the values exactly and repeated runs with the same seed produce
byte-identical output.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = [
    "fmt",
    "write_table",
    "read_table",
    "write_front_csv",
    "read_front_csv",
    "write_points_csv",
    "write_trace_csv",
    "write_json",
]


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_table(path, header: list[str], rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([cell if isinstance(cell, str) else fmt(cell) for cell in row])


def read_table(path) -> tuple[list[str], np.ndarray]:
    with open(path, "r", newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        data = [[float(c) for c in row] for row in r if row]
    return header, np.asarray(data, dtype=float)


def write_front_csv(path, values: np.ndarray) -> None:
    values = np.atleast_2d(values)
    header = [f"f_{i + 1}" for i in range(values.shape[1])]
    write_table(path, header, values)


def read_front_csv(path) -> np.ndarray:
    _, data = read_table(path)
    return data


def write_points_csv(path, points: np.ndarray) -> None:
    points = np.atleast_2d(points)
    header = [f"x_{i + 1}" for i in range(points.shape[1])]
    write_table(path, header, points)


def write_trace_csv(path, trace) -> None:
    """One row per completed step: the new iterate's objective values, the
    weights that produced the step, and the step size."""
    m = trace.values.shape[1]
    header = (["iter"] + [f"f_{i + 1}" for i in range(m)]
              + [f"lambda_{i + 1}" for i in range(m)] + ["step"])
    rows = []
    for k in range(trace.num_steps):
        rows.append([str(k + 1), *trace.values[k + 1], *trace.weights[k], trace.steps[k]])
    write_table(path, header, rows)


def write_json(path, payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    def default(obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (np.floating, np.integer)):
            return obj.item()
        raise TypeError(f"cannot serialize {type(obj)!r}")

    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=default)
        fh.write("\n")
