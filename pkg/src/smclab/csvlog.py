"""CSV log and JSON metric serialization.

Floats are written with repr (shortest round-trip form), so re-parsing a
log CSV reproduces the in-memory values exactly.  Negative zero is
normalized to 0.0 on write; the metric JSON is a pure function of the
log columns and can be recomputed offline from the CSV.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .metrics import RunMetrics
from .simulation import COLUMNS, ComparisonResult, RunLog


def _fmt(value: float) -> str:
    return repr(float(value) + 0.0)


def write_log_csv(path: str | Path, log: RunLog) -> None:
    """Write one run log with a header row and one row per step."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS)
        columns = [log.column(name) for name in COLUMNS]
        for i in range(len(log)):
            writer.writerow([_fmt(col[i]) for col in columns])


def read_log_csv(path: str | Path) -> RunLog:
    """Parse a log CSV back into a RunLog."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"unexpected CSV header in {path}: {header}")
        rows = [[float(cell) for cell in row] for row in reader]
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(COLUMNS):
        raise ValueError(f"malformed CSV body in {path}")
    return RunLog({name: data[:, i] for i, name in enumerate(COLUMNS)})


def write_metrics_json(path: str | Path, metrics: RunMetrics, scenario_name: str,
                       controller: str, seed: int = 0) -> None:
    payload = {"scenario": scenario_name, "controller": controller, "seed": seed}
    payload.update(metrics.to_dict())
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_comparison_json(path: str | Path, result: ComparisonResult) -> None:
    Path(path).write_text(json.dumps(result.to_dict(), indent=2) + "\n")
