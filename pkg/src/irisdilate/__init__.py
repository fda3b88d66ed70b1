"""Training-free pupil-dilation augmentation for iris images and masks.

Re-renders an eye image captured at one dilation level at any other level
via a closed-form inverse sampling map, with rubber-sheet normalization,
mask-aware resampling, IoU metrics, a batch pipeline and a throughput
bench around it.
"""

from .bench import BenchReport, run_bench
from .errors import (
    DilationError,
    DomainError,
    GeometryError,
    ImageFormatError,
    ManifestError,
    SemanticsError,
)
from .geometry import (
    CartesianPoint,
    IrisGeometry,
    PolarPoint,
    RadialMapParams,
    dilation_level,
    make_radial_params,
    radial_map_inverse,
    target_geometry,
    to_cartesian,
    to_polar,
    validate_dilation,
)
from .imaging import PixelGrid, Semantics, label_set, load_image, save_image
from .metrics import IoUConfig, iou, mean_abs_diff, per_class_iou
from .normalization import rubber_sheet
from .pipeline import (
    AugmentationPlan,
    DatasetManifest,
    DatasetRecord,
    RunSummary,
    augment_record,
    build_plan,
    expected_output_count,
    parse_manifest,
    read_sidecar,
    run_manifest,
    write_sidecar,
)
from .resampler import RemapResult, SamplingMethod, remap_dilation, remap_mask, sample
from .synth import annulus_mask, eye_parsing_mask, synthetic_eye

__version__ = "0.1.0"

__all__ = [
    "AugmentationPlan",
    "BenchReport",
    "CartesianPoint",
    "DatasetManifest",
    "DatasetRecord",
    "DilationError",
    "DomainError",
    "GeometryError",
    "ImageFormatError",
    "IoUConfig",
    "IrisGeometry",
    "ManifestError",
    "PixelGrid",
    "PolarPoint",
    "RadialMapParams",
    "RemapResult",
    "RunSummary",
    "SamplingMethod",
    "Semantics",
    "SemanticsError",
    "annulus_mask",
    "augment_record",
    "build_plan",
    "dilation_level",
    "expected_output_count",
    "eye_parsing_mask",
    "iou",
    "label_set",
    "load_image",
    "make_radial_params",
    "mean_abs_diff",
    "parse_manifest",
    "per_class_iou",
    "radial_map_inverse",
    "read_sidecar",
    "remap_dilation",
    "remap_mask",
    "rubber_sheet",
    "run_bench",
    "run_manifest",
    "sample",
    "save_image",
    "synthetic_eye",
    "target_geometry",
    "to_cartesian",
    "to_polar",
    "validate_dilation",
    "write_sidecar",
]
