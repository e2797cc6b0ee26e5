import numpy as np
import pytest

from probdim import (
    ConfigError,
    DescriptorConfig,
    descriptor_matrix,
    evaluate,
    evaluate_features,
    kfold_split,
    pca_fit,
    pca_transform,
    scan_dataset,
    train_classifier,
)
from probdim.analysis import (
    ConfusionMatrix,
    LinearSvmClassifier,
    NearestMeanClassifier,
    OneNearestNeighbor,
)

from oracles import power_iteration_pca


def blobs(rng, n_per_class, centers, spread=0.3):
    X, y = [], []
    for cls, center in enumerate(centers):
        X.append(rng.normal(0.0, spread, (n_per_class, len(center))) + center)
        y.extend([cls] * n_per_class)
    return np.vstack(X), np.array(y)


def test_pca_two_point_example():
    model = pca_fit(np.array([[-1.0, 0.0], [1.0, 0.0]]))
    assert np.allclose(model.variances, [1.0, 0.0], atol=1e-15)
    assert np.allclose(model.components[0], [1.0, 0.0], atol=1e-15)
    coords = pca_transform(model, np.array([[-1.0, 0.0], [1.0, 0.0]]))
    assert np.allclose(coords[:, 0], [-1.0, 1.0], atol=1e-15)


def test_pca_orthonormal_and_trace():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(30, 6))
    model = pca_fit(X)
    gram = model.components @ model.components.T
    assert np.allclose(gram, np.eye(6), atol=1e-10)
    assert np.all(np.diff(model.variances) <= 1e-15)
    total_var = ((X - X.mean(0)) ** 2).sum() / len(X)
    assert abs(model.variances.sum() - total_var) < 1e-9


def test_pca_matches_power_iteration_oracle():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(20, 5))
    model = pca_fit(X)
    _, comps, variances = power_iteration_pca(X)
    assert np.allclose(model.variances, variances, atol=1e-8)
    assert np.allclose(model.components, comps, atol=1e-6)


def test_pca_sign_convention():
    rng = np.random.default_rng(2)
    # data stretched along (-3, 1): the dominant entry must come out positive
    X = np.outer(rng.normal(size=50), [-3.0, 1.0]) + rng.normal(0, 0.01, (50, 2))
    model = pca_fit(X)
    lead = model.components[0]
    assert lead[np.argmax(np.abs(lead))] > 0


def test_pca_component_slicing_and_errors():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(10, 4))
    model = pca_fit(X, n_components=2)
    assert model.components.shape == (2, 4)
    assert pca_transform(model, X).shape == (10, 2)
    with pytest.raises(ConfigError):
        pca_fit(X[:1])
    with pytest.raises(ConfigError):
        pca_fit(X, n_components=5)
    with pytest.raises(ConfigError):
        pca_transform(model, np.zeros((3, 7)))


def test_kfold_partition_properties():
    labels = np.array([0] * 20 + [1] * 20)
    folds = kfold_split(labels, 5, seed=42)
    assert folds.shape == (40,)
    assert set(folds) == set(range(5))
    for cls in (0, 1):
        sizes = np.bincount(folds[labels == cls], minlength=5)
        assert sizes.max() - sizes.min() <= 1
    assert np.array_equal(folds, kfold_split(labels, 5, seed=42))
    assert not np.array_equal(folds, kfold_split(labels, 5, seed=43))


def test_kfold_unbalanced_classes():
    labels = np.array([0] * 7 + [1] * 11 + [2] * 5)
    folds = kfold_split(labels, 3, seed=0)
    for cls in (0, 1, 2):
        sizes = np.bincount(folds[labels == cls], minlength=3)
        assert sizes.max() - sizes.min() <= 1


def test_kfold_errors():
    with pytest.raises(ConfigError):
        kfold_split(np.array([0, 0, 1, 1]), 1, seed=0)
    with pytest.raises(ConfigError, match="class 1"):
        kfold_split(np.array([0, 0, 0, 1, 1]), 3, seed=0)


def test_nearest_mean_and_knn_tie_to_lowest_class():
    X = np.array([[0.0], [2.0]])
    y = np.array([0, 1])
    probe = np.array([[1.0]])  # equidistant
    assert NearestMeanClassifier().fit(X, y).predict(probe)[0] == 0
    assert OneNearestNeighbor().fit(X, y).predict(probe)[0] == 0
    # same data presented in reverse order must not change the answer
    assert OneNearestNeighbor().fit(X[::-1], y[::-1]).predict(probe)[0] == 0


def test_classifiers_separate_blobs():
    rng = np.random.default_rng(4)
    X, y = blobs(rng, 15, centers=[(0, 0), (6, 0), (0, 6)])
    for kind in ("nearest-mean", "knn1", "linear-svm"):
        clf = train_classifier(X, y, kind)
        assert np.array_equal(clf.predict(X), y), kind


def test_svm_is_deterministic():
    rng = np.random.default_rng(5)
    X, y = blobs(rng, 10, centers=[(0, 0), (3, 1)])
    w1 = LinearSvmClassifier().fit(X, y).weights_
    w2 = LinearSvmClassifier().fit(X, y).weights_
    assert w1.tobytes() == w2.tobytes()


def test_svm_survives_near_constant_feature():
    # a feature with variance at roundoff level (a null PCA direction)
    # must not be standardized into an explosion
    rng = np.random.default_rng(6)
    X, y = blobs(rng, 10, centers=[(0.0,), (4.0,)])
    X = np.hstack([X, np.full((len(X), 1), 0.5) + rng.normal(0, 1e-16, (len(X), 1))])
    clf = train_classifier(X, y, "linear-svm")
    probe = np.array([[0.0, 0.503], [4.0, 0.497]])
    assert clf.predict(probe).tolist() == [0, 1]


def test_train_classifier_errors():
    X = np.zeros((4, 2))
    with pytest.raises(ConfigError):
        train_classifier(X, np.array([0, 0, 1, 1]), "forest")
    with pytest.raises(ConfigError):
        train_classifier(X, np.array([1, 1, 1, 1]), "knn1")


def test_confusion_matrix_arithmetic():
    cm = ConfusionMatrix(2)
    cm.add(np.array([0, 0, 1, 1]), np.array([0, 1, 1, 1]))
    assert cm.cells.tolist() == [[1, 1], [0, 2]]
    assert cm.total() == 4
    assert cm.accuracy() == 0.75


def test_evaluate_features_separable_is_perfect():
    rng = np.random.default_rng(7)
    X, y = blobs(rng, 20, centers=[(0, 0, 0), (8, 8, 8)])
    for kind in ("nearest-mean", "knn1", "linear-svm"):
        report = evaluate_features(X, y, k=5, seed=42, classifier=kind)
        assert report.fold_accuracies == (1.0,) * 5
        assert report.mean_accuracy == 1.0
        assert report.std_accuracy == 0.0
        assert np.trace(report.confusion.cells) == 40


def test_evaluate_features_config_echo_and_summary():
    rng = np.random.default_rng(8)
    X, y = blobs(rng, 10, centers=[(0, 0), (9, 9)])
    report = evaluate_features(X, y, k=5, seed=1, classifier="knn1",
                               n_components=1, config={"alpha": 0.2})
    assert report.config["alpha"] == 0.2
    assert report.config["k"] == 5
    assert report.config["n_components"] == 1
    assert report.summary_line() == "1.0000 ± 0.0000 (5 folds, 20 samples)"


def test_evaluate_features_global_pca_path():
    rng = np.random.default_rng(9)
    X, y = blobs(rng, 10, centers=[(0, 0), (9, 9)])
    report = evaluate_features(X, y, k=5, seed=1, pca_global=True)
    assert report.mean_accuracy == 1.0


def test_descriptor_matrix_parallel_equals_serial(tiny_dataset):
    manifest = scan_dataset(tiny_dataset)
    cfg = DescriptorConfig(t_keep=4)
    serial = descriptor_matrix(manifest, cfg, jobs=1)
    parallel = descriptor_matrix(manifest, cfg, jobs=2)
    assert serial.shape == (12, 4)
    assert serial.tobytes() == parallel.tobytes()


def test_evaluate_end_to_end(tiny_dataset):
    manifest = scan_dataset(tiny_dataset)
    report = evaluate(manifest, DescriptorConfig(t_keep=4), k=3, seed=42)
    assert report.config["classes"] == "smooth,striped"
    assert report.confusion.total() == 12
    assert report.mean_accuracy > 0.8  # the two textures are far apart
