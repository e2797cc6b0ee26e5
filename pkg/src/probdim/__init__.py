"""Probability-dimension fractal descriptors for gray-level textures.

The pipeline lifts a gray image to a surface point set, counts cell
occupancies across a ladder of scales, turns the generalized occupancy
sums into a log-log curve, smooths that curve at multiple Gaussian
widths, and feeds the truncated result through PCA and a stratified
K-fold classifier.
"""

from .analysis import (
    ConfusionMatrix,
    EvalReport,
    PcaModel,
    descriptor_matrix,
    evaluate,
    evaluate_features,
    kfold_split,
    pca_fit,
    pca_transform,
    train_classifier,
)
from .counting import backend_name, occupancy_histogram
from .descriptor import (
    DescriptorConfig,
    DescriptorVector,
    extract_descriptors,
    gaussian_smooth,
    multiscale_project,
    truncate,
)
from .errors import ConfigError, LoadError, ProbDimError
from .estimator import (
    LogLogCurve,
    ProbabilityHistogram,
    ScaleSet,
    cell_histogram,
    fit_dimension,
    loglog_curve,
    probability_sum,
    surface_points,
)
from .ingestion import (
    DatasetManifest,
    GrayImage,
    load_image,
    scan_dataset,
    write_pgm,
)
from .synth import generate_textures, synth_texture

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConfusionMatrix",
    "DatasetManifest",
    "DescriptorConfig",
    "DescriptorVector",
    "EvalReport",
    "GrayImage",
    "LoadError",
    "LogLogCurve",
    "PcaModel",
    "ProbDimError",
    "ProbabilityHistogram",
    "ScaleSet",
    "backend_name",
    "cell_histogram",
    "descriptor_matrix",
    "evaluate",
    "evaluate_features",
    "extract_descriptors",
    "fit_dimension",
    "gaussian_smooth",
    "generate_textures",
    "kfold_split",
    "load_image",
    "loglog_curve",
    "multiscale_project",
    "occupancy_histogram",
    "pca_fit",
    "pca_transform",
    "probability_sum",
    "scan_dataset",
    "surface_points",
    "synth_texture",
    "train_classifier",
    "truncate",
    "write_pgm",
]
