import numpy as np
import pytest

from irisdilate import IrisGeometry, PixelGrid, Semantics, synthetic_eye


@pytest.fixture
def eye_geometry():
    # 320x280 NIR-style frame with a mid-range dilation level
    return IrisGeometry(160.0, 140.0, 35.0, 100.0)


@pytest.fixture
def eye_image(eye_geometry):
    return synthetic_eye(320, 280, eye_geometry, noise=6.0, seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def make_label(data) -> PixelGrid:
    return PixelGrid(np.asarray(data, dtype=np.uint8), Semantics.LABEL)


def radius_grid(width, height, g):
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    return np.sqrt((xs - g.center_x) ** 2 + (ys - g.center_y) ** 2)
