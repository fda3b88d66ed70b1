"""Synthetic eye rasters for benchmarks, demos and self-checks.

The textures are smooth trig functions of the ray angle and of the position
inside the pupil->iris span, so a synthetic eye behaves like a real one
under dilation changes: its annulus texture rides along with the radial map
and unwraps to the same rubber sheet at every dilation level.
"""

from __future__ import annotations

import numpy as np

from .geometry import IrisGeometry
from .imaging import PixelGrid, Semantics


def _radius_theta(width: int, height: int, g: IrisGeometry):
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    dx = xs - g.center_x
    dy = ys - g.center_y
    return np.sqrt(dx * dx + dy * dy), np.arctan2(dy, dx)


def synthetic_eye(width: int, height: int, g: IrisGeometry, noise: float = 0.0, seed: int = 0) -> PixelGrid:
    """Grayscale eye: dark pupil, smoothly textured iris annulus, bright sclera."""
    r, theta = _radius_theta(width, height, g)
    rho = np.clip((r - g.r_pupil) / (g.r_iris - g.r_pupil), 0.0, 1.0)
    iris = (
        110.0
        + 55.0 * np.sin(6.0 * theta) * np.sin(np.pi * rho)
        + 30.0 * np.cos(2.0 * np.pi * 2.0 * rho)
    )
    img = np.where(r < g.r_pupil, 25.0, np.where(r < g.r_iris, iris, 205.0))
    if noise > 0.0:
        rng = np.random.default_rng(seed)
        img = img + rng.normal(0.0, noise, img.shape)
    return PixelGrid(np.clip(img, 0, 255).astype(np.uint8), Semantics.INTENSITY)


def annulus_mask(width: int, height: int, g: IrisGeometry) -> PixelGrid:
    """Binary mask of the iris annulus: 1 on [r_pupil, r_iris], 0 elsewhere."""
    r, _ = _radius_theta(width, height, g)
    data = ((r >= g.r_pupil) & (r <= g.r_iris)).astype(np.uint8)
    return PixelGrid(data, Semantics.LABEL)


def eye_parsing_mask(width: int, height: int, g: IrisGeometry) -> PixelGrid:
    """Four-class mask: 0 background, 1 pupil, 2 iris, 3 sclera ring."""
    r, _ = _radius_theta(width, height, g)
    data = np.zeros((height, width), dtype=np.uint8)
    data[r <= 1.35 * g.r_iris] = 3
    data[r <= g.r_iris] = 2
    data[r < g.r_pupil] = 1
    return PixelGrid(data, Semantics.LABEL)
