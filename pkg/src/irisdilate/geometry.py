"""Concentric circle model of the eye and the piecewise radial dilation map.

Everything here is a pure function of its arguments. The key object is the
inverse sampling map: given an output-image radius r' it returns the radius
in the source image that must be sampled so that the pupil boundary moves
from r_pupil = R1 to R2 while the iris-sclera boundary R3 stays put:

    r = (R1 / R2) * r'          if r' <  R2      (inside the pupil)
    r = m * (r' - R2) + R1      if R2 <= r' < R3 (iris annulus), m = (R3-R1)/(R3-R2)
    r = r'                      if R3 <= r'      (sclera and skin are unaffected)

Angles are never touched, so the map can be applied by scaling each pixel's
offset from the center along its own ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, GeometryError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IrisGeometry:
    """Concentric pupil/iris circles: center plus the two boundary radii (pixels)."""

    center_x: float
    center_y: float
    r_pupil: float
    r_iris: float

    def __post_init__(self):
        for name in ("center_x", "center_y", "r_pupil", "r_iris"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise GeometryError(f"{name} must be finite, got {v!r}")
        if not 0.0 < self.r_pupil < self.r_iris:
            raise GeometryError(
                f"radii must satisfy 0 < r_pupil < r_iris, got "
                f"r_pupil={self.r_pupil}, r_iris={self.r_iris}"
            )


@dataclass(frozen=True)
class RadialMapParams:
    """Precomputed radii and slope for one dilation change.

    r1: source pupil radius, r2: target pupil radius, r3: shared iris radius.
    m is derived in __post_init__ and always equals (r3 - r1) / (r3 - r2).
    """

    r1: float
    r2: float
    r3: float
    m: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.r1) and math.isfinite(self.r2) and math.isfinite(self.r3)):
            raise GeometryError("radii must be finite")
        if self.r1 < 0 or self.r2 <= 0 or self.r3 <= 0:
            raise GeometryError(f"radii must be positive (r1 may be 0), got {self.r1}, {self.r2}, {self.r3}")
        if not (self.r1 < self.r3 and self.r2 < self.r3):
            raise GeometryError(
                f"pupil radii must lie strictly inside the iris: r1={self.r1}, r2={self.r2}, r3={self.r3}"
            )
        object.__setattr__(self, "m", (self.r3 - self.r1) / (self.r3 - self.r2))


class CartesianPoint(NamedTuple):
    x: float
    y: float


class PolarPoint(NamedTuple):
    r: float
    theta: float  # radians, normalized to [0, 2*pi)


def dilation_level(g: IrisGeometry) -> float:
    """Dilation level of a geometry: pupil radius over iris radius, in (0, 1)."""
    return g.r_pupil / g.r_iris


def validate_dilation(lam: float) -> float:
    """Check that a dilation level lies in the open interval (0, 1)."""
    if not (math.isfinite(lam) and 0.0 < lam < 1.0):
        raise DomainError(f"dilation level must lie in (0, 1), got {lam!r}")
    return float(lam)


def target_geometry(g: IrisGeometry, lambda_target: float) -> IrisGeometry:
    """Geometry of the re-rendered image: same center and iris radius, new pupil radius."""
    lam = validate_dilation(lambda_target)
    return IrisGeometry(g.center_x, g.center_y, lam * g.r_iris, g.r_iris)


def make_radial_params(g_src: IrisGeometry, g_dst: IrisGeometry) -> RadialMapParams:
    """Radial map parameters for re-rendering g_src's image at g_dst's dilation.

    The two geometries must describe the same eye: identical center and
    identical iris radius. Only the pupil radius may differ.
    """
    if (g_src.center_x, g_src.center_y) != (g_dst.center_x, g_dst.center_y):
        raise GeometryError("source and target geometries must share a center")
    if g_src.r_iris != g_dst.r_iris:
        raise GeometryError("source and target geometries must share the iris radius")
    return RadialMapParams(g_src.r_pupil, g_dst.r_pupil, g_src.r_iris)


def radial_map_inverse(r_prime, p: RadialMapParams):
    """Source radius to sample for an output radius r_prime.

    Piecewise linear and continuous: the pupil branch scales by r1/r2, the
    iris branch has slope m and maps [r2, r3) onto [r1, r3), and everything
    at or beyond the iris boundary is the identity. Accepts a scalar or an
    ndarray; negative radii are rejected.
    """
    arr = np.asarray(r_prime, dtype=np.float64)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("radius must be non-negative")
    pupil = (p.r1 / p.r2) * arr
    iris = p.m * (arr - p.r2) + p.r1
    out = np.where(arr < p.r2, pupil, np.where(arr < p.r3, iris, arr))
    if np.isscalar(r_prime) or arr.ndim == 0:
        return float(out)
    return out


def to_polar(pt: CartesianPoint) -> PolarPoint:
    """Cartesian -> polar about the origin. The origin itself maps to (0, 0)."""
    x, y = float(pt[0]), float(pt[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"coordinates must be finite, got ({x!r}, {y!r})")
    r = math.hypot(x, y)
    if r == 0.0:
        return PolarPoint(0.0, 0.0)
    theta = math.atan2(y, x)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:  # atan2(-tiny, +big) + 2*pi can round up to 2*pi
        theta = 0.0
    return PolarPoint(r, theta)


def to_cartesian(pt: PolarPoint) -> CartesianPoint:
    """Polar -> cartesian: x = r*cos(theta), y = r*sin(theta)."""
    r, theta = float(pt[0]), float(pt[1])
    if not (math.isfinite(r) and math.isfinite(theta)):
        raise DomainError(f"coordinates must be finite, got ({r!r}, {theta!r})")
    if r < 0.0:
        raise DomainError(f"radius must be non-negative, got {r!r}")
    return CartesianPoint(r * math.cos(theta), r * math.sin(theta))
