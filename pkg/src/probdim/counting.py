"""Backend selection for the occupancy-counting kernels.

Counting rules (shared by both backends and both variants):

* grid — the x and y axes are partitioned into consecutive bins of width
  delta starting at 0; trailing strips narrower than delta are discarded.
  The z axis is partitioned into bins of height delta anchored at the
  minimum intensity of the whole image, which makes the statistic
  invariant under uniform brightness shifts. A cell is one (x, y, z) bin;
  its occupancy is the number of surface points it holds.

* gliding — a delta-wide cube is centered on every pixel whose spatial
  window fits inside the image: offsets {-floor(delta/2), ...,
  -floor(delta/2) + delta - 1} in x, y and z relative to (i, j, I(i,j)).
  For odd delta this is the symmetric |offset| <= floor(delta/2) window;
  for even delta the window is exactly delta wide so occupancy can never
  exceed delta**2.

The compiled kernels (probdim._countcore, built from Cython) are used
when the import succeeds and PROBDIM_PURE is unset; otherwise the numpy
fallback takes over. Both produce bit-identical integer histograms.
"""

from __future__ import annotations

import os

import numpy as np

from . import _countpure

if os.environ.get("PROBDIM_PURE"):
    _impl = _countpure
else:
    try:
        from . import _countcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _countpure

BACKEND = "pure" if _impl is _countpure else "compiled"


def backend_name() -> str:
    """Name of the active backend: 'compiled' or 'pure'."""
    return BACKEND


def occupancy_histogram(pixels: np.ndarray, delta: int, variant: str) -> np.ndarray:
    """Occupancy histogram occ[m] = number of cells holding exactly m points.

    ``pixels`` must be a 2D uint8 array; the result has length
    delta*delta + 1 with occ[0] == 0.
    """
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    if variant == "grid":
        return np.asarray(_impl.grid_occupancy(pixels, delta))
    if variant == "gliding":
        return np.asarray(_impl.gliding_occupancy(pixels, delta))
    raise ValueError(f"unknown counting variant '{variant}'")
