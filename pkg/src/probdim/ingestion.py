"""Gray-level image loading and directory-per-class dataset scanning.

Supported inputs are binary PGM (P5, maxval 255 or 65535) and PNG
(gray or RGB, 8 or 16 bit). Color pixels are reduced with the BT.601
luminance Y = 0.299 R + 0.587 G + 0.114 B, rounded half-up; 16-bit
samples are rescaled to [0, 255] by integer division by 257.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, LoadError

IMAGE_EXTENSIONS = {".pgm", ".png"}


@dataclass(frozen=True)
class GrayImage:
    """A 2D grid of intensities in [0, 255], stored as an H x W uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2:
            raise ConfigError(f"expected a 2D intensity grid, got shape {px.shape}")
        if px.shape[0] < 2 or px.shape[1] < 2:
            raise ConfigError(f"image too small: {px.shape[1]}x{px.shape[0]}, need at least 2x2")
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ConfigError("intensities must lie in [0, 255]")
            px = px.astype(np.uint8)
        object.__setattr__(self, "pixels", np.ascontiguousarray(px))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def intensities(self) -> np.ndarray:
        """Row-major flat view of the pixel values."""
        return self.pixels.reshape(-1)

    @classmethod
    def from_intensities(cls, width: int, height: int, values) -> "GrayImage":
        values = np.asarray(values)
        if values.size != width * height:
            raise ConfigError(
                f"intensity count {values.size} does not match {width}x{height}")
        return cls(values.reshape(height, width))


@dataclass(frozen=True)
class DatasetManifest:
    """Labeled samples discovered under a directory-per-class root.

    ``samples`` holds (root-relative path, class index) pairs, sorted by
    (class, filename) so repeated scans are identical regardless of
    filesystem enumeration order.
    """

    root: Path
    classes: tuple[str, ...]
    samples: tuple[tuple[str, int], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.samples)

    def image_path(self, index: int) -> Path:
        return self.root / self.samples[index][0]

    def labels(self) -> np.ndarray:
        return np.array([cls for _, cls in self.samples], dtype=np.int64)

    def class_sizes(self) -> list[int]:
        counts = [0] * len(self.classes)
        for _, cls in self.samples:
            counts[cls] += 1
        return counts


def _read_pgm(path: Path) -> GrayImage:
    data = path.read_bytes()
    if not data.startswith(b"P5"):
        raise LoadError(f"{path}: not a binary (P5) PGM file")

    # Header: magic, width, height, maxval as whitespace-separated tokens,
    # with '#' comments running to end of line.
    pos = 2
    tokens = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise LoadError(f"{path}: truncated PGM header")
        tokens.append(data[start:pos])
    pos += 1  # single whitespace byte after maxval

    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise LoadError(f"{path}: malformed PGM header") from None
    if width <= 0 or height <= 0:
        raise LoadError(f"{path}: bad PGM dimensions {width}x{height}")
    if maxval not in (255, 65535):
        raise LoadError(f"{path}: unsupported PGM maxval {maxval}")

    n = width * height
    raw = data[pos:]
    if maxval == 255:
        if len(raw) < n:
            raise LoadError(f"{path}: truncated pixel data")
        pixels = np.frombuffer(raw[:n], dtype=np.uint8)
    else:
        if len(raw) < 2 * n:
            raise LoadError(f"{path}: truncated pixel data")
        wide = np.frombuffer(raw[:2 * n], dtype=">u2")
        pixels = (wide // 257).astype(np.uint8)
    return GrayImage(pixels.reshape(height, width))


def _luminance(rgb: np.ndarray) -> np.ndarray:
    """BT.601 luminance with round-half-up, on an H x W x 3 uint8 array."""
    y = (0.299 * rgb[:, :, 0].astype(np.float64)
         + 0.587 * rgb[:, :, 1].astype(np.float64)
         + 0.114 * rgb[:, :, 2].astype(np.float64))
    return np.floor(y + 0.5).astype(np.uint8)


def _read_png(path: Path) -> GrayImage:
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover
        raise LoadError(f"{path}: PNG support requires Pillow ({exc})") from None

    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode == "L":
                arr = np.asarray(im)
            elif mode in ("1", "LA"):
                arr = np.asarray(im.convert("L"))
            elif mode in ("P", "RGB", "RGBA"):
                # palette and alpha resolve to plain RGB; alpha is discarded
                arr = np.asarray(im.convert("RGB"))
            elif mode in ("I", "I;16", "I;16B"):
                wide = np.asarray(im, dtype=np.int64)
                arr = (wide // 257).astype(np.uint8)
            else:
                raise LoadError(f"{path}: unsupported PNG mode '{mode}'")
    except LoadError:
        raise
    except Exception as exc:
        raise LoadError(f"{path}: cannot decode PNG ({exc})") from None

    if arr.ndim == 3:
        arr = _luminance(arr)
    return GrayImage(arr)


def load_image(path) -> GrayImage:
    """Load a PGM or PNG file as a GrayImage.

    Raises LoadError naming the path when the file is missing, cannot be
    decoded, or is smaller than 2x2.
    """
    path = Path(path)
    if not path.is_file():
        raise LoadError(f"{path}: no such file")
    suffix = path.suffix.lower()
    try:
        if suffix == ".pgm":
            return _read_pgm(path)
        if suffix == ".png":
            return _read_png(path)
    except ConfigError as exc:
        # size violations surface as load errors so the CLI exits with 2
        raise LoadError(f"{path}: {exc}") from None
    raise LoadError(f"{path}: unsupported format '{suffix}' (expected .pgm or .png)")


def write_pgm(img: GrayImage, path) -> None:
    """Write a GrayImage as binary P5 with maxval 255."""
    path = Path(path)
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    path.write_bytes(header + img.pixels.tobytes())


def scan_dataset(root, min_per_class: int = 1) -> DatasetManifest:
    """Build a manifest from a directory-per-class layout.

    Class names are the subdirectory names, sorted lexicographically;
    samples are sorted by (class, filename).
    """
    root = Path(root)
    if not root.is_dir():
        raise LoadError(f"{root}: no such directory")

    class_names = sorted(e.name for e in os.scandir(root) if e.is_dir())
    if not class_names:
        raise ConfigError(f"{root}: no class directories")
    if len(class_names) < 2:
        raise ConfigError(f"{root}: at least 2 classes required, found {len(class_names)}")

    samples = []
    for cls_idx, name in enumerate(class_names):
        files = sorted(
            f.name for f in os.scandir(root / name)
            if f.is_file() and Path(f.name).suffix.lower() in IMAGE_EXTENSIONS)
        if len(files) < min_per_class:
            raise ConfigError(
                f"class '{name}' has {len(files)} images, need at least {min_per_class}")
        samples.extend((os.path.join(name, fname), cls_idx) for fname in files)

    return DatasetManifest(root=root, classes=tuple(class_names), samples=tuple(samples))
