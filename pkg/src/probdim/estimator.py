"""Occupancy statistics of a gray image lifted to a 3D surface.

A W x H image I is read as the point set {(i, j, I(i,j))}. For each cell
size delta the occupancy distribution p_m(delta) is the fraction of
occupied delta-cells (or valid gliding-window centers) holding exactly m
points. The generalized occupancy sum sum_m m**alpha * p_m, sampled over
a ladder of cell sizes, yields the log-log curve that both the dimension
estimate and the texture descriptors are built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .counting import occupancy_histogram
from .errors import ConfigError
from .ingestion import GrayImage

VARIANTS = ("grid", "gliding")

# the default ladder starts at 2 and targets this many curve points
DEFAULT_SCALE_COUNT = 10


@dataclass(frozen=True)
class ScaleSet:
    """Strictly increasing integer cell sizes, each >= 2, at least 3 of them."""

    deltas: tuple[int, ...]

    def __post_init__(self):
        deltas = tuple(int(d) for d in self.deltas)
        if len(deltas) < 3:
            raise ConfigError(f"need at least 3 scales, got {len(deltas)}")
        if any(d < 2 for d in deltas):
            raise ConfigError(f"every scale must be >= 2, got {deltas}")
        if any(b <= a for a, b in zip(deltas, deltas[1:])):
            raise ConfigError(f"scales must be strictly increasing, got {deltas}")
        object.__setattr__(self, "deltas", deltas)

    def __len__(self) -> int:
        return len(self.deltas)

    def __iter__(self):
        return iter(self.deltas)

    @classmethod
    def default_for(cls, width: int, height: int) -> "ScaleSet":
        """Dense ladder 2, 3, ... capped so every delta fits the image."""
        top = min(2 + DEFAULT_SCALE_COUNT - 1, min(width, height) // 2)
        if top < 4:
            raise ConfigError(
                f"image {width}x{height} too small for a 3-scale ladder "
                f"(needs min side >= 8)")
        return cls(tuple(range(2, top + 1)))

    @classmethod
    def parse(cls, spec: str) -> "ScaleSet":
        """Parse '2..11' (inclusive range) or '2,4,8' (explicit list)."""
        spec = spec.strip()
        try:
            if ".." in spec:
                lo, hi = spec.split("..")
                deltas = tuple(range(int(lo), int(hi) + 1))
            else:
                deltas = tuple(int(tok) for tok in spec.split(","))
        except ValueError:
            raise ConfigError(f"cannot parse scale spec '{spec}'") from None
        return cls(deltas)


@dataclass(frozen=True)
class ProbabilityHistogram:
    """Occupancy distribution at one cell size.

    ``counts[m]`` is the number of cells holding exactly m points;
    ``total_cells`` is the number of cells included in the statistic, so
    the probabilities sum to 1 exactly.
    """

    delta: int
    counts: dict[int, int]
    total_cells: int

    @property
    def probabilities(self) -> dict[int, float]:
        return {m: c / self.total_cells for m, c in self.counts.items()}

    def max_occupancy(self) -> int:
        return max(self.counts)


@dataclass(frozen=True)
class LogLogCurve:
    """Sampled scaling curve: log cell size against log occupancy sum."""

    deltas: tuple[int, ...]
    log_scale: np.ndarray = field(repr=False)    # ln(delta), strictly increasing
    log_measure: np.ndarray = field(repr=False)  # ln of the occupancy sum
    alpha: float
    variant: str

    def __len__(self) -> int:
        return len(self.deltas)


def surface_points(img: GrayImage) -> np.ndarray:
    """Lift the image to its 3D point set, one (i, j, I(i,j)) row per pixel.

    i is the column and j the row; rows come out in row-major pixel order.
    """
    h, w = img.pixels.shape
    jj, ii = np.divmod(np.arange(h * w), w)
    return np.column_stack((ii, jj, img.intensities.astype(np.int64)))


def max_delta(img: GrayImage) -> int:
    return min(img.width, img.height) // 2


def cell_histogram(img: GrayImage, delta: int, variant: str = "grid") -> ProbabilityHistogram:
    """Occupancy distribution of the lifted surface at one cell size.

    ``variant`` selects fixed-grid partitioning or the classical gliding
    (centered-cube) counting; see probdim.counting for the exact rules.
    """
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant '{variant}', expected one of {VARIANTS}")
    if not 2 <= delta <= max_delta(img):
        raise ConfigError(
            f"scale {delta} out of range [2, {max_delta(img)}] for a "
            f"{img.width}x{img.height} image")

    occ = occupancy_histogram(img.pixels, delta, variant)
    ms = np.flatnonzero(occ)
    counts = {int(m): int(occ[m]) for m in ms}
    return ProbabilityHistogram(delta=delta, counts=counts,
                                total_cells=int(occ.sum()))


def probability_sum(hist: ProbabilityHistogram, alpha: float) -> float:
    """Generalized occupancy sum: sum over m of m**alpha * p_m.

    alpha = -1 recovers the classical information statistic; alpha = 0
    gives exactly 1 by normalization.
    """
    ms = np.array(sorted(hist.counts), dtype=np.float64)
    cs = np.array([hist.counts[int(m)] for m in ms], dtype=np.float64)
    return float(np.sum(ms ** alpha * cs) / hist.total_cells)


def loglog_curve(img: GrayImage, scales: ScaleSet, alpha: float = 0.2,
                 variant: str = "grid") -> LogLogCurve:
    """Sample ln(occupancy sum) against ln(delta) over a scale ladder."""
    values = np.empty(len(scales), dtype=np.float64)
    for k, delta in enumerate(scales):
        values[k] = probability_sum(cell_histogram(img, delta, variant), alpha)
    log_scale = np.log(np.array(scales.deltas, dtype=np.float64))
    return LogLogCurve(deltas=scales.deltas, log_scale=log_scale,
                       log_measure=np.log(values), alpha=alpha, variant=variant)


def fit_dimension(curve: LogLogCurve) -> float:
    """Dimension estimate: minus the least-squares slope of the curve."""
    t = np.asarray(curve.log_scale, dtype=np.float64)
    u = np.asarray(curve.log_measure, dtype=np.float64)
    if t.size < 2:
        raise ConfigError(f"dimension fit needs >= 2 points, got {t.size}")
    tc = t - t.mean()
    denom = float(np.sum(tc * tc))
    if denom == 0.0:
        raise ConfigError("dimension fit needs at least 2 distinct scales")
    slope = float(np.sum(tc * (u - u.mean()))) / denom
    return -slope
