import math
import os
import pathlib

import numpy as np
import pytest

import frlstsvm

DATA = pathlib.Path(os.environ.get("FRLSTSVM_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def blobs(seed=0, n_min=20, n_maj=60, dim=2, shift=1.5):
    rng = np.random.default_rng(seed)
    x = np.vstack([rng.normal(shift, 1.0, (n_min, dim)), rng.normal(-shift, 1.0, (n_maj, dim))])
    y = [frlstsvm.MINORITY] * n_min + [frlstsvm.MAJORITY] * n_maj
    return frlstsvm.Dataset(x, y)


def test_fit_predict_round_trip(tmp_path):
    ds = blobs()
    cfg = frlstsvm.TrainConfig()
    cfg.tau = 0.2
    model = frlstsvm.fit(ds, cfg)
    assert model.kernel == frlstsvm.KernelType.linear
    assert model.dimension == 2
    assert model.majority_kept <= model.majority_count == 60
    labels, d1, d2 = model.predict(ds.features)
    assert labels.shape == (80,)
    assert np.all(np.isin(labels, [1, -1]))
    assert np.all(labels[d1 <= d2] == 1)
    acc = np.mean(labels == np.asarray(ds.labels))
    assert acc >= 0.9

    path = tmp_path / "m.model"
    model.save(path)
    again = frlstsvm.Model.load(path)
    assert np.array_equal(again.predict(ds.features)[0], labels)
    assert frlstsvm.Model.loads(model.dumps()).dumps() == model.dumps()


def test_errors_map_to_python_exceptions():
    ds = blobs(1)
    cfg = frlstsvm.TrainConfig()
    cfg.tau = 1.0
    with pytest.raises(frlstsvm.EmptySelectionError):
        frlstsvm.fit(ds, cfg)
    assert issubclass(frlstsvm.EmptySelectionError, frlstsvm.ConfigError)
    model = frlstsvm.fit(ds)
    with pytest.raises(frlstsvm.DimensionError):
        model.predict(np.zeros((2, 3)))
    with pytest.raises(frlstsvm.ConfigError):
        frlstsvm.parse_config("gamma = -1")


def test_worked_subsampling_example():
    x = np.array([[0.0], [0.1], [0.9], [1.0]])
    scores = frlstsvm.positive_region_scores(x, [-1, -1, -1, 1])
    assert scores.scores == pytest.approx([0.50, 0.55, 0.15], abs=1e-12)
    assert frlstsvm.subsample_majority(scores, 0.4).kept == [0, 1]


def test_metrics():
    cm = frlstsvm.confusion([1, 1, -1, -1, -1], [1, -1, -1, -1, 1])
    assert (cm.tp, cm.fn, cm.fp, cm.tn) == (1, 1, 1, 2)
    r = frlstsvm.report(cm)
    assert r.sensitivity == 0.5
    assert r.specificity == pytest.approx(2 / 3)
    assert r.gmean == math.sqrt(r.sensitivity * r.specificity)
    lit = frlstsvm.report(frlstsvm.ConfusionMatrix(8, 4, 2, 6), frlstsvm.MetricConvention.paper_literal)
    assert lit.sensitivity == pytest.approx(0.8)


def test_keel_and_cv():
    ds = frlstsvm.load_keel(DATA / "keel" / "haberman.dat")
    assert (ds.rows, ds.cols, ds.minority_count) == (306, 3, 81)
    cfg = frlstsvm.parse_config("tau = 0, 0.3\ngamma = 1\nc = 0.25, 1\nfolds = 3\nrepeats = 1\n")
    result = frlstsvm.run_cv(cfg, ds)
    assert result.fold_count == 3
    assert 0.5 < result.accuracy.mean <= 1.0
    text = frlstsvm.cv_result_jsonl(result, cfg)
    assert text.count("\n") == 4
    cfg.workers = 2
    assert frlstsvm.cv_result_jsonl(frlstsvm.run_cv(cfg, ds), cfg) == text
