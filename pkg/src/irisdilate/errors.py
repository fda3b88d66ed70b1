"""Exception taxonomy shared by every module.

Three families matter to callers: parameter problems (DomainError,
GeometryError), data problems (SemanticsError, ImageFormatError,
ManifestError), and plain I/O, which is left to the builtin OSError
hierarchy. The CLI maps these onto stable exit codes.
"""


class DilationError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DilationError, ValueError):
    """A numeric argument is outside its legal range (e.g. lambda not in (0, 1))."""


class GeometryError(DilationError, ValueError):
    """Circle parameters are inconsistent (radii ordering, mismatched centers...)."""


class SemanticsError(DilationError):
    """An operation is illegal for the grid's channel semantics (e.g. bilinear on labels)."""


class ImageFormatError(DilationError):
    """A raster file could not be decoded or has an unsupported layout."""


class ManifestError(DilationError):
    """A dataset manifest failed to parse."""
