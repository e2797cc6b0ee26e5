"""Numpy implementation of the occupancy-counting kernels.

Same contract as the compiled module (_countcore): both return an int64
occupancy histogram ``occ`` of length delta*delta + 1 where ``occ[m]`` is
the number of cells (grid variant) or window centers (gliding variant)
holding exactly m surface points. ``occ[0]`` is always 0.
"""

from __future__ import annotations

import numpy as np


def grid_occupancy(pixels: np.ndarray, delta: int) -> np.ndarray:
    h, w = pixels.shape
    nby, nbx = h // delta, w // delta
    z0 = int(pixels.min())  # z bins anchor at the full-image minimum

    cropped = pixels[:nby * delta, :nbx * delta].astype(np.int64)
    zbin = (cropped - z0) // delta

    # pack (block, zbin) into one id per pixel; 256 // delta + 1 bins suffice
    nz = 256 // delta + 1
    block = ((np.arange(nby * delta) // delta)[:, None] * nbx
             + (np.arange(nbx * delta) // delta)[None, :])
    cell_ids = block * nz + zbin

    per_cell = np.bincount(cell_ids.reshape(-1), minlength=nby * nbx * nz)
    occupancies = per_cell[per_cell > 0]
    return np.bincount(occupancies, minlength=delta * delta + 1).astype(np.int64)


def gliding_occupancy(pixels: np.ndarray, delta: int) -> np.ndarray:
    h, w = pixels.shape
    r0 = delta // 2
    nh, nw = h - delta + 1, w - delta + 1

    center = pixels[r0:r0 + nh, r0:r0 + nw].astype(np.int64)
    m = np.zeros((nh, nw), dtype=np.int64)
    for dy in range(-r0, -r0 + delta):
        for dx in range(-r0, -r0 + delta):
            neighbor = pixels[r0 + dy:r0 + dy + nh, r0 + dx:r0 + dx + nw].astype(np.int64)
            dz = neighbor - center
            m += (dz >= -r0) & (dz <= -r0 + delta - 1)

    return np.bincount(m.reshape(-1), minlength=delta * delta + 1).astype(np.int64)
