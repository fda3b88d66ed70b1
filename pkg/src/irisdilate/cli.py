"""Command-line front door.

Exit codes are stable: 0 success, 1 usage or bad parameter, 2 data error
(undecodable image, wrong mask semantics, bad manifest), 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import run_bench
from .errors import (
    DilationError,
    DomainError,
    GeometryError,
    ImageFormatError,
    ManifestError,
    SemanticsError,
)
from .geometry import IrisGeometry
from .imaging import PixelGrid, Semantics, load_image, save_image
from .metrics import iou
from .normalization import DEFAULT_SHEET_HEIGHT, DEFAULT_SHEET_WIDTH, rubber_sheet
from .pipeline import build_plan, parse_manifest, read_sidecar, run_manifest, write_sidecar
from .resampler import SamplingMethod, remap_dilation
from .synth import synthetic_eye

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        super().__init__(message)
        self.parser = parser


class Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; we need usage errors to be 1."""

    def error(self, message):
        raise UsageError(self, message)


def _dilation_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"dilation level must lie in (0, 1), got {text}")
    return value


def _levels_arg(text: str) -> list[float]:
    return [_dilation_arg(part) for part in text.split(",") if part]


def _method_arg(text: str) -> SamplingMethod:
    try:
        return SamplingMethod(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"method must be 'nearest' or 'bilinear', got {text!r}")


def _add_geometry_flags(p: argparse.ArgumentParser):
    p.add_argument("--cx", type=float, help="circle center x (pixels)")
    p.add_argument("--cy", type=float, help="circle center y (pixels)")
    p.add_argument("--r-pupil", type=float, help="pupil boundary radius (pixels)")
    p.add_argument("--r-iris", type=float, help="iris boundary radius (pixels)")
    p.add_argument("--geometry", type=Path, help="sidecar file to read circle parameters from")


def _resolve_geometry(args) -> IrisGeometry:
    """Flags override sidecar values field by field; all four must end up set."""
    fields = {"cx": args.cx, "cy": args.cy, "r_pupil": args.r_pupil, "r_iris": args.r_iris}
    if args.geometry is not None:
        side = read_sidecar(args.geometry)
        base = {
            "cx": side.center_x,
            "cy": side.center_y,
            "r_pupil": side.r_pupil,
            "r_iris": side.r_iris,
        }
        for key, val in fields.items():
            if val is None:
                fields[key] = base[key]
    missing = [k for k, v in fields.items() if v is None]
    if missing:
        raise DomainError(f"missing geometry: give --geometry or --{'/--'.join(missing)}")
    return IrisGeometry(fields["cx"], fields["cy"], fields["r_pupil"], fields["r_iris"])


def cmd_dilate(args) -> int:
    image = load_image(args.image, Semantics.LABEL if args.mask_mode else Semantics.INTENSITY)
    g = _resolve_geometry(args)
    method = SamplingMethod.NEAREST if args.mask_mode else args.method
    res = remap_dilation(image, g, args.lam, method)
    save_image(res.image, args.out)
    write_sidecar(Path(args.out).with_suffix(".geom"), res.geometry, res.lam)
    print(f"{res.lam:.6f}")
    return EXIT_OK


def cmd_augment(args) -> int:
    manifest = parse_manifest(args.manifest)
    plan = build_plan(args.levels, args.lambda_min, args.lambda_max, args.include_original)
    summary = run_manifest(manifest, plan, args.method, args.out_dir, args.workers)
    print(summary.line())
    return EXIT_OK


def cmd_normalize(args) -> int:
    image = load_image(args.image)
    g = _resolve_geometry(args)
    sheet = rubber_sheet(image, g, args.width, args.height, args.method)
    save_image(sheet, args.out)
    return EXIT_OK


def cmd_iou(args) -> int:
    a = load_image(args.mask_a, Semantics.LABEL)
    b = load_image(args.mask_b, Semantics.LABEL)
    print(f"{iou(a, b):.6f}")
    return EXIT_OK


def cmd_preview(args) -> int:
    image = load_image(args.image)
    g = _resolve_geometry(args)
    panels = [image.data]
    for lam in args.levels:
        panels.append(remap_dilation(image, g, lam, args.method).image.data)
    strip = np.concatenate(panels, axis=1)
    save_image(PixelGrid(strip), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.image is not None:
        image = load_image(args.image)
        g = _resolve_geometry(args)
    else:
        g = IrisGeometry(args.bench_width / 2, args.bench_height / 2, 35.0, 100.0)
        image = synthetic_eye(args.bench_width, args.bench_height, g)
    report = run_bench(image, g, args.iters, args.method, args.threads)
    print(report.line())
    return EXIT_OK


def cmd_plan(args) -> int:
    plan = build_plan(args.levels, args.lambda_min, args.lambda_max)
    print(",".join(repr(v) for v in plan.levels))
    return EXIT_OK


def build_parser() -> Parser:
    parser = Parser(prog="irisdilate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("dilate", help="re-render one image at a target dilation level")
    p.add_argument("--image", type=Path, required=True)
    _add_geometry_flags(p)
    p.add_argument("--lambda", dest="lam", type=_dilation_arg, required=True,
                   help="target dilation level in (0, 1)")
    p.add_argument("--method", type=_method_arg, default=SamplingMethod.NEAREST)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--mask-mode", action="store_true",
                   help="treat the input as a label mask (forces nearest sampling)")
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("augment", help="batch-augment a dataset manifest")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("--levels", type=int, default=19)
    p.add_argument("--lambda-min", type=_dilation_arg, default=0.15)
    p.add_argument("--lambda-max", type=_dilation_arg, default=0.75)
    p.add_argument("--method", type=_method_arg, default=SamplingMethod.NEAREST)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--include-original", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("normalize", help="unwrap the iris annulus to a rubber sheet")
    p.add_argument("--image", type=Path, required=True)
    _add_geometry_flags(p)
    p.add_argument("--width", type=int, default=DEFAULT_SHEET_WIDTH)
    p.add_argument("--height", type=int, default=DEFAULT_SHEET_HEIGHT)
    p.add_argument("--method", type=_method_arg, default=SamplingMethod.NEAREST)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("iou", help="bitwise intersection-over-union of two binary masks")
    p.add_argument("--mask-a", type=Path, required=True)
    p.add_argument("--mask-b", type=Path, required=True)
    p.set_defaults(func=cmd_iou)

    p = sub.add_parser("preview", help="write a strip of the input at several dilation levels")
    p.add_argument("--image", type=Path, required=True)
    _add_geometry_flags(p)
    p.add_argument("--levels", type=_levels_arg, required=True,
                   help="comma-separated dilation levels, e.g. 0.15,0.55")
    p.add_argument("--method", type=_method_arg, default=SamplingMethod.NEAREST)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_preview)

    p = sub.add_parser("bench", help="time the remap kernel")
    p.add_argument("--image", type=Path, help="image to bench (default: synthetic eye)")
    _add_geometry_flags(p)
    p.add_argument("--bench-width", type=int, default=320)
    p.add_argument("--bench-height", type=int, default=280)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--method", type=_method_arg, default=SamplingMethod.NEAREST)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plan", help="print the dilation levels of a linear plan")
    p.add_argument("--levels", type=int, default=19)
    p.add_argument("--lambda-min", type=_dilation_arg, default=0.15)
    p.add_argument("--lambda-max", type=_dilation_arg, default=0.75)
    p.set_defaults(func=cmd_plan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        exc.parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SemanticsError, ImageFormatError, ManifestError, DilationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
