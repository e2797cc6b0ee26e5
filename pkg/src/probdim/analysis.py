"""Classification protocol: PCA decorrelation, stratified K-fold, scoring.

Per fold, the PCA basis is fit on the training rows only (pass
pca_global=True to reproduce the leakage-prone variant that fits once on
everything), both sides are projected, a classifier is trained and the
held-out fold is scored. Fold accuracies, their mean and population
standard deviation, and a confusion matrix summed over folds make up the
report.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .descriptor import DescriptorConfig, extract_descriptors
from .errors import ConfigError
from .ingestion import DatasetManifest, load_image

CLASSIFIER_KINDS = ("nearest-mean", "knn1", "linear-svm")

SVM_C = 1.0
SVM_MAX_EPOCHS = 10_000
SVM_TOL = 1e-6


@dataclass(frozen=True)
class PcaModel:
    """Orthonormal basis of the population covariance, by decreasing variance.

    Sign convention: each component's largest-magnitude entry is positive
    (ties resolved to the earliest index), which pins the basis down to a
    unique, reproducible orientation.
    """

    mean: np.ndarray = field(repr=False)
    components: np.ndarray = field(repr=False)  # (n_components, dim)
    variances: np.ndarray = field(repr=False)   # nonincreasing, >= 0


@dataclass
class ConfusionMatrix:
    """cells[expected][predicted] counts."""

    n_classes: int
    cells: np.ndarray = None

    def __post_init__(self):
        if self.cells is None:
            self.cells = np.zeros((self.n_classes, self.n_classes), dtype=np.int64)

    def add(self, expected: np.ndarray, predicted: np.ndarray) -> None:
        for e, p in zip(expected, predicted):
            self.cells[e, p] += 1

    def total(self) -> int:
        return int(self.cells.sum())

    def accuracy(self) -> float:
        return float(np.trace(self.cells)) / self.total()


@dataclass(frozen=True)
class EvalReport:
    fold_accuracies: tuple[float, ...]
    mean_accuracy: float
    std_accuracy: float  # population std over the folds
    confusion: ConfusionMatrix
    config: dict

    def summary_line(self) -> str:
        n = self.confusion.total()
        k = len(self.fold_accuracies)
        return (f"{self.mean_accuracy:.4f} ± {self.std_accuracy:.4f} "
                f"({k} folds, {n} samples)")


def pca_fit(X: np.ndarray, n_components: int | None = None) -> PcaModel:
    """Eigendecomposition of the population covariance of the rows."""
    X = np.asarray(X, dtype=np.float64)
    n, dim = X.shape
    if n < 2:
        raise ConfigError(f"PCA needs >= 2 rows, got {n}")
    if n_components is None:
        n_components = dim
    if not 1 <= n_components <= dim:
        raise ConfigError(f"n_components={n_components} out of range [1, {dim}]")

    mean = X.mean(axis=0)
    centered = X - mean
    cov = centered.T @ centered / n
    eigvals, eigvecs = np.linalg.eigh(cov)

    order = np.argsort(-eigvals, kind="stable")
    eigvals = np.clip(eigvals[order], 0.0, None)
    basis = eigvecs[:, order].T[:n_components]

    # sign convention: largest-magnitude entry positive, earliest on ties
    for row in basis:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0

    return PcaModel(mean=mean, components=basis, variances=eigvals[:n_components])


def pca_transform(model: PcaModel, X: np.ndarray) -> np.ndarray:
    """Project rows onto the model basis: (x - mean) @ components.T."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape[1] != model.mean.shape[0]:
        raise ConfigError(
            f"dimension mismatch: rows have {X.shape[1]} features, "
            f"model expects {model.mean.shape[0]}")
    return (X - model.mean) @ model.components.T


def kfold_split(labels: np.ndarray, k: int, seed: int) -> np.ndarray:
    """Stratified fold index per sample, deterministic in (seed, labels).

    Each class's samples are shuffled with a PCG64 generator seeded from
    SeedSequence((seed, class_index)) and dealt round-robin, so per-class
    fold sizes differ by at most one.
    """
    labels = np.asarray(labels)
    if k < 2:
        raise ConfigError(f"fold count must be >= 2, got {k}")
    folds = np.empty(len(labels), dtype=np.int64)
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        if len(idx) < k:
            raise ConfigError(
                f"class {cls} has {len(idx)} samples, need at least k={k}")
        rng = np.random.default_rng((int(seed), int(cls)))
        shuffled = idx.copy()
        rng.shuffle(shuffled)
        for pos, sample in enumerate(shuffled):
            folds[sample] = pos % k
    return folds


class NearestMeanClassifier:
    """Per-class centroid; predicts the nearest centroid (Euclidean)."""

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        self.classes_ = np.unique(y)
        self.centroids_ = np.vstack([X[y == c].mean(axis=0) for c in self.classes_])
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        d2 = ((X[:, None, :] - self.centroids_[None, :, :]) ** 2).sum(axis=2)
        # argmin returns the earliest index on ties -> lowest class index
        return self.classes_[np.argmin(d2, axis=1)]


class OneNearestNeighbor:
    """Stores the training set; predicts the label of the closest row."""

    def fit(self, X, y):
        self.X_ = np.asarray(X, dtype=np.float64)
        self.y_ = np.asarray(y)
        # presort by label so distance ties resolve to the lowest class index
        order = np.argsort(self.y_, kind="stable")
        self.X_ = self.X_[order]
        self.y_ = self.y_[order]
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        d2 = ((X[:, None, :] - self.X_[None, :, :]) ** 2).sum(axis=2)
        return self.y_[np.argmin(d2, axis=1)]


def _dual_cd_svm(X: np.ndarray, y: np.ndarray, C: float, max_epochs: int,
                 tol: float) -> np.ndarray:
    """Binary L1-loss linear SVM by dual coordinate descent.

    Minimizes 0.5 ||w||^2 + C sum_i max(0, 1 - y_i w.x_i) through its dual
    (one alpha per sample, box [0, C]), sweeping the samples in index
    order each epoch until the largest projected gradient falls below tol
    or the epoch cap is reached. X must already carry the bias column.
    Deterministic: no shuffling, no randomness.
    """
    n, dim = X.shape
    alpha = np.zeros(n)
    w = np.zeros(dim)
    qii = np.einsum("ij,ij->i", X, X)
    for _ in range(max_epochs):
        worst = 0.0
        for i in range(n):
            if qii[i] == 0.0:
                continue
            g = y[i] * (w @ X[i]) - 1.0
            if alpha[i] == 0.0:
                pg = min(g, 0.0)
            elif alpha[i] == C:
                pg = max(g, 0.0)
            else:
                pg = g
            if pg != 0.0:
                old = alpha[i]
                alpha[i] = min(max(old - g / qii[i], 0.0), C)
                w += (alpha[i] - old) * y[i] * X[i]
            worst = max(worst, abs(pg))
        if worst < tol:
            break
    return w


class LinearSvmClassifier:
    """One-vs-rest linear maximum-margin classifier.

    Features are standardized with training-fold statistics before the
    margin solver; prediction picks the class with the largest decision
    value (ties go to the lowest class index via argmax).
    """

    def __init__(self, C: float = SVM_C, max_epochs: int = SVM_MAX_EPOCHS,
                 tol: float = SVM_TOL):
        self.C = C
        self.max_epochs = max_epochs
        self.tol = tol

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        self.classes_ = np.unique(y)
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        # stds within roundoff of zero (null PCA directions) must not be
        # divided by, or held-out rows blow up by ~1/eps
        cutoff = std.max() * 1e-12
        self.scale_ = np.where(std > cutoff, std, 1.0)

        Xs = self._standardize(X)
        Xb = np.hstack([Xs, np.ones((len(Xs), 1))])  # bias column
        self.weights_ = np.vstack([
            _dual_cd_svm(Xb, np.where(y == c, 1.0, -1.0), self.C,
                         self.max_epochs, self.tol)
            for c in self.classes_])
        return self

    def _standardize(self, X):
        return (X - self.mean_) / self.scale_

    def decision_function(self, X):
        Xs = self._standardize(np.asarray(X, dtype=np.float64))
        Xb = np.hstack([Xs, np.ones((len(Xs), 1))])
        return Xb @ self.weights_.T

    def predict(self, X):
        return self.classes_[np.argmax(self.decision_function(X), axis=1)]


def train_classifier(X: np.ndarray, y: np.ndarray, kind: str = "linear-svm"):
    """Fit one of the supported classifier kinds on (X, y)."""
    if kind == "nearest-mean":
        model = NearestMeanClassifier()
    elif kind == "knn1":
        model = OneNearestNeighbor()
    elif kind == "linear-svm":
        model = LinearSvmClassifier()
    else:
        raise ConfigError(
            f"unknown classifier '{kind}', expected one of {CLASSIFIER_KINDS}")
    y = np.asarray(y)
    if len(y) == 0 or len(np.unique(y)) < 2:
        raise ConfigError("training set must contain at least 2 nonempty classes")
    return model.fit(X, y)


def evaluate_features(X: np.ndarray, y: np.ndarray, k: int = 5, seed: int = 42,
                      classifier: str = "linear-svm",
                      n_components: int | None = None,
                      pca_global: bool = False,
                      config: dict | None = None) -> EvalReport:
    """Run the K-fold protocol on a precomputed feature matrix."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n_classes = int(y.max()) + 1
    folds = kfold_split(y, k, seed)

    global_model = pca_fit(X, n_components) if pca_global else None

    accuracies = []
    confusion = ConfusionMatrix(n_classes)
    for f in range(k):
        train = folds != f
        test = ~train
        model = global_model if pca_global else pca_fit(X[train], n_components)
        Xtr = pca_transform(model, X[train])
        Xte = pca_transform(model, X[test])
        clf = train_classifier(Xtr, y[train], classifier)
        pred = clf.predict(Xte)
        accuracies.append(float(np.mean(pred == y[test])))
        confusion.add(y[test], pred)

    accs = np.array(accuracies)
    report_config = dict(config or {})
    report_config.update(k=k, seed=seed, classifier=classifier,
                         n_components=n_components, pca_global=pca_global,
                         n_samples=len(y), n_classes=n_classes)
    return EvalReport(fold_accuracies=tuple(accuracies),
                      mean_accuracy=float(accs.mean()),
                      std_accuracy=float(accs.std()),
                      confusion=confusion,
                      config=report_config)


def _extract_worker(args) -> np.ndarray:
    path, relpath, cfg = args
    return extract_descriptors(load_image(path), cfg, source=relpath).values


def descriptor_matrix(manifest: DatasetManifest, cfg: DescriptorConfig,
                      jobs: int = 1, progress=None) -> np.ndarray:
    """Descriptor rows for every manifest sample, in manifest order.

    Extraction is pure per image, so the result is identical for any
    ``jobs`` value; workers only change the wall-clock time.
    """
    tasks = [(str(manifest.image_path(i)), manifest.samples[i][0], cfg)
             for i in range(len(manifest))]
    rows = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, values in enumerate(pool.map(_extract_worker, tasks)):
                rows.append(values)
                if progress:
                    progress(i + 1, len(tasks))
    else:
        for i, task in enumerate(tasks):
            rows.append(_extract_worker(task))
            if progress:
                progress(i + 1, len(tasks))
    return np.vstack(rows)


def evaluate(manifest: DatasetManifest, cfg: DescriptorConfig, k: int = 5,
             seed: int = 42, classifier: str = "linear-svm",
             n_components: int | None = None, pca_global: bool = False,
             jobs: int = 1, progress=None) -> EvalReport:
    """Full protocol: extract descriptors for every image, then K-fold."""
    X = descriptor_matrix(manifest, cfg, jobs=jobs, progress=progress)
    y = manifest.labels()
    config = {
        "alpha": cfg.alpha, "a0": cfg.a0, "t_keep": cfg.t_keep,
        "variant": cfg.variant,
        "scales": "auto" if cfg.scales is None else ",".join(map(str, cfg.scales)),
        "classes": ",".join(manifest.classes),
    }
    return evaluate_features(X, y, k=k, seed=seed, classifier=classifier,
                             n_components=n_components, pca_global=pca_global,
                             config=config)
