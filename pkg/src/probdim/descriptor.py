"""Texture descriptors from the scaling curve.

The raw log-log curve is smoothed by projecting its multiscale transform
onto a single Gaussian width a0 (each output point is a normalized
Gaussian-weighted average of the curve samples), then cut down to its
leading points, which carry the small-scale behavior. The kept values are
the feature vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .estimator import LogLogCurve, ScaleSet, VARIANTS, loglog_curve
from .ingestion import GrayImage

A0_RANGE = (0.1, 5.0)


@dataclass(frozen=True)
class DescriptorConfig:
    """Extraction parameters; defaults match the tuned settings."""

    alpha: float = 0.2
    a0: float = 0.1
    t_keep: int = 8
    variant: str = "grid"
    scales: ScaleSet | None = None  # None: dense per-image default ladder

    def __post_init__(self):
        if not A0_RANGE[0] <= self.a0 <= A0_RANGE[1]:
            raise ConfigError(f"a0 must lie in [{A0_RANGE[0]}, {A0_RANGE[1]}], got {self.a0}")
        if self.t_keep < 1:
            raise ConfigError(f"t_keep must be >= 1, got {self.t_keep}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant '{self.variant}', expected one of {VARIANTS}")


@dataclass(frozen=True)
class DescriptorVector:
    """Feature vector of one image: the leading smoothed curve values."""

    values: np.ndarray = field(repr=False)
    config: DescriptorConfig
    source: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise ConfigError(f"descriptor for '{self.source}' has non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


def gaussian_smooth(t: np.ndarray, u: np.ndarray, a0: float) -> np.ndarray:
    """Normalized Gaussian-kernel smoothing of samples u at abscissae t.

    Output i is sum_j w_ij * u_j with w_ij proportional to
    exp(-(t_j - t_i)**2 / (2 a0**2)) and each row renormalized over the
    available samples, which handles the curve ends without zero padding.
    Computed in the centered form u_i + sum_j w_ij (u_j - u_i) / sum_j w_ij
    so a constant curve is reproduced exactly.
    """
    if a0 <= 0:
        raise ConfigError(f"smoothing width must be positive, got {a0}")
    t = np.asarray(t, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    if t.size != u.size or t.size < 2:
        raise ConfigError(f"need >= 2 curve points, got {t.size} and {u.size}")

    out = np.empty_like(u)
    inv = 1.0 / (2.0 * a0 * a0)
    for i in range(t.size):
        w = np.exp(-((t - t[i]) ** 2) * inv)
        out[i] = u[i] + np.sum(w * (u - u[i])) / np.sum(w)
    return out


def multiscale_project(curve: LogLogCurve, a0: float) -> LogLogCurve:
    """Smooth the curve at fixed Gaussian width a0; abscissae unchanged."""
    smoothed = gaussian_smooth(curve.log_scale, curve.log_measure, a0)
    return replace(curve, log_measure=smoothed)


def truncate(curve: LogLogCurve, t_keep: int, config: DescriptorConfig | None = None,
             source: str = "") -> DescriptorVector:
    """Keep the first t_keep smoothed values, in ascending-scale order."""
    if t_keep > len(curve):
        raise ConfigError(
            f"t_keep={t_keep} exceeds curve length {len(curve)}")
    if config is None:
        config = DescriptorConfig(t_keep=t_keep, alpha=curve.alpha, variant=curve.variant)
    return DescriptorVector(values=curve.log_measure[:t_keep].copy(),
                            config=config, source=source)


def extract_descriptors(img: GrayImage, cfg: DescriptorConfig,
                        source: str = "") -> DescriptorVector:
    """Full pipeline: scaling curve -> Gaussian projection -> truncation."""
    scales = cfg.scales if cfg.scales is not None else ScaleSet.default_for(img.width, img.height)
    if cfg.t_keep > len(scales):
        raise ConfigError(
            f"t_keep={cfg.t_keep} exceeds the {len(scales)}-point scale ladder "
            f"for a {img.width}x{img.height} image")
    curve = loglog_curve(img, scales, alpha=cfg.alpha, variant=cfg.variant)
    return truncate(multiscale_project(curve, cfg.a0), cfg.t_keep,
                    config=cfg, source=source)
