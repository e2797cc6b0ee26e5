"""CSV serialization with a pinned byte-level format.

All writers use '.' as the decimal separator, LF line endings and 17
significant digits for floats, and write through a temp file renamed into
place so rerunning a command either fully replaces an output or leaves it
untouched.
"""

from __future__ import annotations

import csv
import io
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .analysis import EvalReport
from .estimator import LogLogCurve
from .ingestion import DatasetManifest


def format_float(x: float) -> str:
    return "%.17g" % x


def _writer(handle):
    return csv.writer(handle, lineterminator="\n")


def atomic_write_text(path, text: str) -> None:
    """Write text via a sibling temp file and an atomic rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(path, text: str) -> None:
    """Write to a file atomically, or to stdout when path is None or '-'."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)


def curve_csv(curve: LogLogCurve) -> str:
    """Rows (delta, t, N_P, u): cell size, ln size, occupancy sum, ln sum."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["delta", "t", "N_P", "u"])
    measures = np.exp(curve.log_measure)
    for k, delta in enumerate(curve.deltas):
        w.writerow([delta,
                    format_float(curve.log_scale[k]),
                    format_float(measures[k]),
                    format_float(curve.log_measure[k])])
    return buf.getvalue()


def descriptor_csv(rows: list[tuple[str, str, np.ndarray]], t_keep: int) -> str:
    """One row per image: path, label, then value columns d1..dk."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["path", "label"] + [f"d{i + 1}" for i in range(t_keep)])
    for path, label, values in rows:
        w.writerow([path, label] + [format_float(v) for v in values])
    return buf.getvalue()


def summary_csv(report: EvalReport) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["fold", "accuracy"])
    for f, acc in enumerate(report.fold_accuracies):
        w.writerow([f, format_float(acc)])
    return buf.getvalue()


def confusion_csv(report: EvalReport, class_names: list[str]) -> str:
    """Expected classes in rows, predicted in columns, names on both axes."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow([""] + list(class_names))
    for i, name in enumerate(class_names):
        w.writerow([name] + [int(c) for c in report.confusion.cells[i]])
    return buf.getvalue()


def manifest_csv(manifest: DatasetManifest) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["path", "class"])
    for relpath, cls in manifest.samples:
        w.writerow([relpath, manifest.classes[cls]])
    return buf.getvalue()
