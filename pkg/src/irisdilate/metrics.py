"""Mask and image comparison metrics.

The headline metric is bitwise intersection-over-union between two binary
masks: the count of pixels set in both over the count set in either, with a
small epsilon in the denominator so empty masks divide cleanly. A per-class
variant binarizes a multi-class mask one id at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SemanticsError
from .imaging import PixelGrid, Semantics

DEFAULT_EPSILON = 1e-6


@dataclass(frozen=True)
class IoUConfig:
    """Denominator guard for the IoU ratio, in pixel-count units."""

    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")


def _check_same_shape(a: PixelGrid, b: PixelGrid):
    if a.data.shape != b.data.shape:
        raise DomainError(f"shape mismatch: {a.data.shape} vs {b.data.shape}")


def iou(mask_a: PixelGrid, mask_b: PixelGrid, cfg: IoUConfig = IoUConfig()) -> float:
    """Bitwise IoU of two binary {0, 1} label masks: sum(A&B) / (sum(A|B) + eps)."""
    for m in (mask_a, mask_b):
        if m.semantics is not Semantics.LABEL:
            raise SemanticsError("iou requires Label masks")
        if not set(np.unique(m.data)) <= {0, 1}:
            raise SemanticsError("iou requires binary masks with labels in {0, 1}")
    _check_same_shape(mask_a, mask_b)
    a = mask_a.data != 0
    b = mask_b.data != 0
    inter = int(np.count_nonzero(a & b))
    union = int(np.count_nonzero(a | b))
    return inter / (union + cfg.epsilon)


def per_class_iou(
    mask_a: PixelGrid, mask_b: PixelGrid, class_id: int, cfg: IoUConfig = IoUConfig()
) -> float:
    """IoU of one class id's binarized planes; 0.0 when the id is absent from both."""
    for m in (mask_a, mask_b):
        if m.semantics is not Semantics.LABEL:
            raise SemanticsError("per_class_iou requires Label masks")
    _check_same_shape(mask_a, mask_b)
    a = mask_a.data == class_id
    b = mask_b.data == class_id
    inter = int(np.count_nonzero(a & b))
    union = int(np.count_nonzero(a | b))
    return inter / (union + cfg.epsilon)


def mean_abs_diff(a: PixelGrid, b: PixelGrid, region: PixelGrid | None = None) -> float:
    """Mean |a - b| in sample units, optionally restricted to a mask's nonzero pixels."""
    if a.semantics is not Semantics.INTENSITY or b.semantics is not Semantics.INTENSITY:
        raise SemanticsError("mean_abs_diff compares Intensity grids")
    _check_same_shape(a, b)
    diff = np.abs(a.data.astype(np.float64) - b.data.astype(np.float64))
    if region is None:
        return float(diff.mean())
    if region.data.shape[:2] != a.data.shape[:2]:
        raise DomainError(f"region shape {region.data.shape} does not match {a.data.shape}")
    sel = region.data != 0
    if sel.ndim == 2 and diff.ndim == 3:
        sel = np.broadcast_to(sel[:, :, None], diff.shape)
    if not sel.any():
        raise DomainError("region mask selects no pixels")
    return float(diff[sel].mean())
