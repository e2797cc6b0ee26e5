import numpy as np
import pytest

from probdim import GrayImage, write_pgm


def random_image(rng, size, high=256):
    return GrayImage(rng.integers(0, high, size=(size, size), dtype=np.uint8))


@pytest.fixture
def tiny_dataset(tmp_path):
    """Two-class PGM dataset: 6 blurred-noise vs 6 grating 32x32 images."""
    from probdim import generate_textures

    root = tmp_path / "data"
    for kind, name in (("blur-noise", "smooth"), ("grating", "striped")):
        d = root / name
        d.mkdir(parents=True)
        for i, img in enumerate(generate_textures(kind, 6, 32, 5)):
            write_pgm(img, d / f"{name}_{i}.pgm")
    return root
