"""Rubber-sheet normalization: unwrap the iris annulus into a rectangle.

Row 0 of the sheet samples the pupil boundary (normalized radius 0) and the
last row samples the iris boundary (normalized radius 1); radii in between
are linearly spaced. Column j samples the ray at theta = 2*pi*j/width, so
theta stays strictly inside [0, 2*pi) and the sheet wraps around cleanly.

Because the radial span pupil->iris is always normalized to [0, 1], every
dilation state of one eye unwraps to (approximately) the same sheet; the
property suites use that as the independent check on the remap engine.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .geometry import IrisGeometry
from .imaging import PixelGrid
from .resampler import SamplingMethod, sample

DEFAULT_SHEET_WIDTH = 512  # angular samples
DEFAULT_SHEET_HEIGHT = 64  # radial samples


def rubber_sheet(
    image: PixelGrid,
    g: IrisGeometry,
    out_w: int = DEFAULT_SHEET_WIDTH,
    out_h: int = DEFAULT_SHEET_HEIGHT,
    method: SamplingMethod = SamplingMethod.NEAREST,
) -> PixelGrid:
    """Unwrap the annulus [r_pupil, r_iris] of g to an out_h x out_w sheet."""
    if out_w < 2 or out_h < 2:
        raise DomainError(f"sheet dimensions must be >= 2, got {out_w}x{out_h}")
    radii = g.r_pupil + (np.arange(out_h, dtype=np.float64) / (out_h - 1)) * (g.r_iris - g.r_pupil)
    theta = 2.0 * np.pi * np.arange(out_w, dtype=np.float64) / out_w
    x = g.center_x + radii[:, None] * np.cos(theta)[None, :]
    y = g.center_y + radii[:, None] * np.sin(theta)[None, :]
    return PixelGrid(sample(image, x, y, method), image.semantics)
