import numpy as np
import pytest

from probdim import DescriptorConfig, ScaleSet, evaluate_features, loglog_curve, scan_dataset
from probdim.csvio import (
    atomic_write_text,
    confusion_csv,
    curve_csv,
    descriptor_csv,
    emit,
    format_float,
    manifest_csv,
    summary_csv,
)

from conftest import random_image


def test_format_float_roundtrips():
    rng = np.random.default_rng(0)
    for x in rng.normal(size=50) * 10.0 ** rng.integers(-8, 8, size=50):
        assert float(format_float(x)) == x
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1.0) == "1"


def test_curve_csv_layout():
    rng = np.random.default_rng(1)
    curve = loglog_curve(random_image(rng, 16), ScaleSet((2, 3, 4)), alpha=0.2)
    text = curve_csv(curve)
    lines = text.splitlines()
    assert lines[0] == "delta,t,N_P,u"
    assert len(lines) == 4
    assert "\r" not in text and text.endswith("\n")
    delta, t, n_p, u = lines[1].split(",")
    assert delta == "2"
    assert float(t) == curve.log_scale[0]
    assert float(u) == curve.log_measure[0]
    assert abs(float(n_p) - np.exp(curve.log_measure[0])) < 1e-15


def test_descriptor_csv_layout():
    rows = [("a/x.pgm", "a", np.array([0.25, -1.5])),
            ("b/y.pgm", "b", np.array([0.5, 2.0]))]
    lines = descriptor_csv(rows, 2).splitlines()
    assert lines[0] == "path,label,d1,d2"
    assert lines[1] == "a/x.pgm,a,0.25,-1.5"


def test_summary_and_confusion_csv():
    rng = np.random.default_rng(2)
    X = np.vstack([rng.normal(0, 0.1, (10, 2)), rng.normal(5, 0.1, (10, 2))])
    y = np.array([0] * 10 + [1] * 10)
    report = evaluate_features(X, y, k=5, seed=0, classifier="knn1")

    lines = summary_csv(report).splitlines()
    assert lines[0] == "fold,accuracy"
    assert len(lines) == 6
    assert lines[1] == "0,1"

    conf = confusion_csv(report, ["low", "high"]).splitlines()
    assert conf[0] == ",low,high"
    assert conf[1] == "low,10,0"
    assert conf[2] == "high,0,10"


def test_manifest_csv(tiny_dataset):
    manifest = scan_dataset(tiny_dataset)
    lines = manifest_csv(manifest).splitlines()
    assert lines[0] == "path,class"
    assert lines[1] == "smooth/smooth_0.pgm,smooth"
    assert len(lines) == 13


def test_atomic_write_replaces(tmp_path):
    target = tmp_path / "out.csv"
    target.write_text("old")
    atomic_write_text(target, "new contents\n")
    assert target.read_text() == "new contents\n"
    assert list(tmp_path.iterdir()) == [target]  # no stray temp files


def test_emit_stdout(capsys):
    emit("-", "hello\n")
    emit(None, "again\n")
    assert capsys.readouterr().out == "hello\nagain\n"
