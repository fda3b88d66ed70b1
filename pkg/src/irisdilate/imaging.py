"""8-bit raster containers and PNG persistence.

A PixelGrid is a uint8 array (grayscale ``(h, w)`` or interleaved
``(h, w, c)``) tagged with channel semantics. Intensity grids hold
radiometric values and may be resampled with any method; Label grids hold
one class id per pixel (a single id-plane, never one-hot planes) and are
only ever sampled nearest-neighbor so that no new ids can appear.

Pixel (col, row) sits at real coordinates (col, row): an integer lattice
with no half-pixel offset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageFormatError, SemanticsError


class Semantics(enum.Enum):
    INTENSITY = "intensity"
    LABEL = "label"


@dataclass(frozen=True, eq=False)
class PixelGrid:
    """Immutable 8-bit raster with a semantics tag.

    The constructor copies its input and freezes the copy, so a grid can be
    shared across threads after construction. Single-channel data is stored
    two-dimensional regardless of how it was passed in.
    """

    data: np.ndarray
    semantics: Semantics = Semantics.INTENSITY

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.dtype != np.uint8:
            raise ImageFormatError(f"pixel data must be uint8, got {arr.dtype}")
        if arr.ndim == 3 and arr.shape[2] == 1:
            arr = arr[:, :, 0]
        if arr.ndim not in (2, 3):
            raise ImageFormatError(f"pixel data must be (h, w) or (h, w, c), got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1 or (arr.ndim == 3 and arr.shape[2] < 1):
            raise ImageFormatError(f"zero-sized image: shape {arr.shape}")
        arr = np.ascontiguousarray(arr).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def channels(self) -> int:
        return 1 if self.data.ndim == 2 else self.data.shape[2]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PixelGrid):
            return NotImplemented
        return (
            self.semantics is other.semantics
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )


def load_image(path, semantics: Semantics = Semantics.INTENSITY) -> PixelGrid:
    """Load a PNG (or other 8-bit raster) as a PixelGrid.

    1- and 3-channel files are supported; alpha is dropped, palettes are
    expanded. Raises ImageFormatError for undecodable or unsupported files
    and FileNotFoundError for a missing path.
    """
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode == "P":
                im = im.convert("RGB")
            elif im.mode == "LA":
                im = im.convert("L")
            elif im.mode == "RGBA":
                im = im.convert("RGB")
            if im.mode not in ("L", "RGB"):
                raise ImageFormatError(f"unsupported image mode {im.mode!r} in {path}")
            arr = np.asarray(im, dtype=np.uint8)
    except FileNotFoundError:
        raise
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"cannot decode {path}: {exc}") from exc
    except OSError as exc:
        raise ImageFormatError(f"cannot read {path}: {exc}") from exc
    return PixelGrid(arr, semantics)


def save_image(grid: PixelGrid, path) -> None:
    """Write a grid as PNG. save -> load is byte-for-byte lossless."""
    path = Path(path)
    if grid.channels == 1:
        im = Image.fromarray(grid.data, mode="L")
    elif grid.channels == 3:
        im = Image.fromarray(grid.data, mode="RGB")
    else:
        raise ImageFormatError(f"cannot persist a {grid.channels}-channel grid as PNG")
    im.save(path, format="PNG")


def label_set(grid: PixelGrid) -> tuple[int, ...]:
    """Sorted distinct class ids present in a Label grid."""
    if grid.semantics is not Semantics.LABEL:
        raise SemanticsError("label_set requires a Label grid")
    return tuple(int(v) for v in np.unique(grid.data))
