"""Synthetic texture generators for fixtures and smoke tests.

Three kinds: blurred uniform noise (smooth, long-range structure), a
sinusoidal grating with additive noise, and a noisy checkerboard. Every
image is generated from a PCG64 stream seeded by (seed, image index), so
a batch is reproducible byte for byte and independent of batching.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .ingestion import GrayImage

KINDS = ("blur-noise", "grating", "checkerboard")


def _gaussian_blur(values: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian blur with reflected edges."""
    radius = max(1, int(np.ceil(3.0 * sigma)))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-x * x / (2.0 * sigma * sigma))
    kernel /= kernel.sum()

    padded = np.pad(values, radius, mode="reflect")
    rows = np.apply_along_axis(np.convolve, 1, padded, kernel, "valid")
    return np.apply_along_axis(np.convolve, 0, rows, kernel, "valid")


def _quantize(values: np.ndarray) -> np.ndarray:
    return np.floor(np.clip(values, 0.0, 255.0) + 0.5).astype(np.uint8)


def synth_texture(kind: str, size: int, rng: np.random.Generator,
                  sigma: float = 2.0, period: int = 8, cell: int = 8) -> GrayImage:
    """One synthetic texture image of the given kind and side length."""
    if size < 8:
        raise ConfigError(f"synthetic size must be >= 8, got {size}")

    if kind == "blur-noise":
        noise = rng.random((size, size))
        smooth = _gaussian_blur(noise, sigma)
        lo, hi = smooth.min(), smooth.max()
        if hi == lo:
            return GrayImage(np.zeros((size, size), dtype=np.uint8))
        return GrayImage(_quantize((smooth - lo) / (hi - lo) * 255.0))

    if kind == "grating":
        cols = np.arange(size, dtype=np.float64)
        base = 127.5 + 80.0 * np.sin(2.0 * np.pi * cols / period)
        img = np.tile(base, (size, 1)) + rng.normal(0.0, 15.0, (size, size))
        return GrayImage(_quantize(img))

    if kind == "checkerboard":
        jj, ii = np.indices((size, size))
        board = (((jj // cell) + (ii // cell)) % 2) * 255.0
        return GrayImage(_quantize(board + rng.normal(0.0, 15.0, (size, size))))

    raise ConfigError(f"unknown texture kind '{kind}', expected one of {KINDS}")


def generate_textures(kind: str, count: int, size: int, seed: int,
                      **params) -> list[GrayImage]:
    """A reproducible batch: image i uses the stream seeded by (seed, i)."""
    if count < 1:
        raise ConfigError(f"count must be >= 1, got {count}")
    return [synth_texture(kind, size, np.random.default_rng((int(seed), i)), **params)
            for i in range(count)]
