"""Remap engine: re-render an iris image at a different pupil dilation.

For every output pixel we take its offset from the circle center, shrink or
stretch that offset along its own ray according to the piecewise radial map,
and sample the input image there. Pixels at or beyond the iris boundary keep
their source coordinates, so that whole region is copied through untouched
and stays bit-identical.

The kernel is vectorized over the full grid and only computes inside the
bounding box of the iris circle; rows and columns entirely outside it are
handled by the initial frame copy. Output bytes are deterministic: nearest
rounding is floor(x + 0.5) per axis, never banker's rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError, SemanticsError
from .geometry import (
    IrisGeometry,
    RadialMapParams,
    dilation_level,
    make_radial_params,
    radial_map_inverse,
    target_geometry,
    validate_dilation,
)
from .imaging import PixelGrid, Semantics


class SamplingMethod(enum.Enum):
    NEAREST = "nearest"
    BILINEAR = "bilinear"


@dataclass(frozen=True)
class RemapResult:
    """A re-rendered image together with its geometry and achieved dilation level."""

    image: PixelGrid
    geometry: IrisGeometry
    lam: float


def _nearest(data: np.ndarray, x, y):
    h, w = data.shape[:2]
    ix = np.clip(np.floor(x + 0.5).astype(np.intp), 0, w - 1)
    iy = np.clip(np.floor(y + 0.5).astype(np.intp), 0, h - 1)
    return data[iy, ix]


def _bilinear(data: np.ndarray, x, y):
    h, w = data.shape[:2]
    xc = np.clip(x, 0.0, float(w - 1))
    yc = np.clip(y, 0.0, float(h - 1))
    x0 = np.clip(np.floor(xc).astype(np.intp), 0, max(w - 2, 0))
    y0 = np.clip(np.floor(yc).astype(np.intp), 0, max(h - 2, 0))
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = xc - x0
    fy = yc - y0
    if data.ndim == 3:
        fx = fx[..., None]
        fy = fy[..., None]
    v00 = data[y0, x0].astype(np.float64)
    v01 = data[y0, x1].astype(np.float64)
    v10 = data[y1, x0].astype(np.float64)
    v11 = data[y1, x1].astype(np.float64)
    top = v00 + fx * (v01 - v00)
    bot = v10 + fx * (v11 - v10)
    out = top + fy * (bot - top)
    return np.clip(np.floor(out + 0.5), 0.0, 255.0).astype(np.uint8)


def sample(grid: PixelGrid, x, y, method: SamplingMethod = SamplingMethod.NEAREST):
    """Sample a grid at real coordinates, scalar or array.

    Out-of-bounds coordinates are clamped to the edge pixels; all channels
    of one output position come from the same source location. Label grids
    refuse bilinear sampling, and NaN coordinates are a domain error.
    """
    if grid.semantics is Semantics.LABEL and method is not SamplingMethod.NEAREST:
        raise SemanticsError("label grids must be sampled nearest-neighbor")
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if np.any(np.isnan(xa)) or np.any(np.isnan(ya)):
        raise DomainError("sampling coordinates must not be NaN")
    if method is SamplingMethod.NEAREST:
        out = _nearest(grid.data, xa, ya)
    else:
        out = _bilinear(grid.data, xa, ya)
    if np.isscalar(x) and np.isscalar(y) and grid.channels == 1:
        return int(out)
    return out


def _source_coordinates(w: int, h: int, g: IrisGeometry, params: RadialMapParams):
    """Source sampling coordinates and the inside-iris mask for a window origin (0, 0)."""
    xs = np.arange(w, dtype=np.float64)
    ys = np.arange(h, dtype=np.float64)
    dx = xs - g.center_x
    dy = ys - g.center_y
    r = np.sqrt(dy[:, None] ** 2 + dx[None, :] ** 2)
    inside = r < params.r3
    r_src = radial_map_inverse(r, params)
    scale = np.divide(r_src, r, out=np.ones_like(r), where=r > 0)
    sx = g.center_x + dx[None, :] * scale
    sy = g.center_y + dy[:, None] * scale
    return sx, sy, inside


def remap_dilation(
    image: PixelGrid,
    g: IrisGeometry,
    lambda_target: float,
    method: SamplingMethod = SamplingMethod.NEAREST,
) -> RemapResult:
    """Re-render an image captured with geometry g at a new dilation level.

    The target keeps the source center and iris radius; only the pupil
    radius changes. Everything at radius >= r_iris is copied through
    bit-identically, and when the target level equals the source level the
    whole frame is returned unchanged under nearest sampling.
    """
    lam = validate_dilation(lambda_target)
    if image.semantics is Semantics.LABEL and method is not SamplingMethod.NEAREST:
        raise SemanticsError("label grids must be remapped nearest-neighbor")
    w, h = image.width, image.height
    if not (0 <= g.center_x < w and 0 <= g.center_y < h):
        raise GeometryError(
            f"circle center ({g.center_x}, {g.center_y}) lies outside the {w}x{h} image"
        )
    g_dst = target_geometry(g, lam)
    params = make_radial_params(g, g_dst)

    out = np.array(image.data)  # frame copy; the annulus window is overwritten below

    # Window: bounding box of the iris circle, clipped to the frame.
    x_lo = max(0, int(np.floor(g.center_x - params.r3)))
    x_hi = min(w, int(np.ceil(g.center_x + params.r3)) + 1)
    y_lo = max(0, int(np.floor(g.center_y - params.r3)))
    y_hi = min(h, int(np.ceil(g.center_y + params.r3)) + 1)

    g_local = IrisGeometry(g.center_x - x_lo, g.center_y - y_lo, g.r_pupil, g.r_iris)
    sx, sy, inside = _source_coordinates(x_hi - x_lo, y_hi - y_lo, g_local, params)
    sx += x_lo
    sy += y_lo
    if method is SamplingMethod.NEAREST:
        vals = _nearest(image.data, sx, sy)
    else:
        vals = _bilinear(image.data, sx, sy)
    window = out[y_lo:y_hi, x_lo:x_hi]
    window[inside] = vals[inside]

    result = PixelGrid(out, image.semantics)
    return RemapResult(result, g_dst, dilation_level(g_dst))


def remap_mask(mask: PixelGrid, g: IrisGeometry, lambda_target: float) -> RemapResult:
    """Remap a label mask; sampling is forced nearest so no new class ids appear."""
    if mask.semantics is not Semantics.LABEL:
        raise SemanticsError("remap_mask requires a Label grid")
    return remap_dilation(mask, g, lambda_target, SamplingMethod.NEAREST)
