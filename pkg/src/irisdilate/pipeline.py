"""Offline batch augmentation over a dataset manifest.

Manifest format (UTF-8, one record per line, ``#`` starts a comment):

    image_path,mask_path_or_dash,cx,cy,r_pupil,r_iris[,subject_id]

Relative paths resolve under the manifest's directory. Each record is
re-rendered once per plan level and written as
``<stem>_lam<level*1000, 3 digits>.png`` with a ``.geom`` sidecar carrying
the target circle parameters and achieved level; masks, when present, get
the same treatment. Records are independent work units: a record that fails
(missing file, bad geometry) is logged and skipped, never aborts the run,
and the output bytes do not depend on the worker count.
"""

from __future__ import annotations

import logging
import shutil
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DilationError, DomainError, ManifestError
from .geometry import IrisGeometry, dilation_level, validate_dilation
from .imaging import Semantics, load_image, save_image
from .resampler import SamplingMethod, remap_dilation, remap_mask

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AugmentationPlan:
    """Ordered dilation levels to synthesize, plus whether the original is kept."""

    levels: tuple[float, ...]
    include_original: bool = False

    def __post_init__(self):
        if len(self.levels) < 1:
            raise DomainError("plan needs at least one level")
        for lam in self.levels:
            validate_dilation(lam)
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise DomainError(f"levels must be strictly increasing, got {self.levels}")

    @property
    def outputs_per_record(self) -> int:
        return len(self.levels) + (1 if self.include_original else 0)


@dataclass(frozen=True)
class DatasetRecord:
    """One manifest row. Geometry is validated at run time, not at parse time,
    so a bad row becomes a logged skip instead of a parse failure."""

    image_path: Path
    mask_path: Path | None
    cx: float
    cy: float
    r_pupil: float
    r_iris: float
    subject_id: str | None = None

    def geometry(self) -> IrisGeometry:
        return IrisGeometry(self.cx, self.cy, self.r_pupil, self.r_iris)


@dataclass(frozen=True)
class DatasetManifest:
    records: tuple[DatasetRecord, ...]
    root: Path


@dataclass(frozen=True)
class RunSummary:
    processed: int
    skipped: int
    outputs: int
    wall_time: float

    def line(self) -> str:
        return (
            f"processed={self.processed} skipped={self.skipped} "
            f"outputs={self.outputs} seconds={self.wall_time:.3f}"
        )


def build_plan(
    n_levels: int,
    lambda_min: float,
    lambda_max: float,
    include_original: bool = False,
) -> AugmentationPlan:
    """n_levels dilation levels linearly spaced from lambda_min to lambda_max inclusive."""
    if n_levels < 2:
        raise DomainError(f"need at least 2 levels, got {n_levels}")
    validate_dilation(lambda_min)
    validate_dilation(lambda_max)
    if not lambda_min < lambda_max:
        raise DomainError(f"degenerate range [{lambda_min}, {lambda_max}]")
    levels = tuple(float(v) for v in np.linspace(lambda_min, lambda_max, n_levels))
    return AugmentationPlan(levels, include_original)


def expected_output_count(n_records_ok: int, plan: AugmentationPlan, has_mask: bool) -> int:
    """Counting law: records_ok * (|levels| + include_original) * (1 + has_mask)."""
    return n_records_ok * plan.outputs_per_record * (2 if has_mask else 1)


def parse_manifest(path, root=None) -> DatasetManifest:
    """Read a manifest file; any malformed line aborts with ManifestError."""
    path = Path(path)
    base = Path(root) if root is not None else path.parent
    records: list[DatasetRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if len(fields) not in (6, 7):
                raise ManifestError(f"{path}:{lineno}: expected 6 or 7 fields, got {len(fields)}")
            try:
                cx, cy, rp, ri = (float(v) for v in fields[2:6])
            except ValueError as exc:
                raise ManifestError(f"{path}:{lineno}: bad number: {exc}") from exc
            mask = None if fields[1] == "-" else base / fields[1]
            subject = fields[6] if len(fields) == 7 else None
            records.append(DatasetRecord(base / fields[0], mask, cx, cy, rp, ri, subject))
    if not records:
        raise ManifestError(f"{path}: manifest contains no records")
    return DatasetManifest(tuple(records), base)


def write_sidecar(path, g: IrisGeometry, lam: float) -> None:
    """Persist circle parameters and achieved dilation level, one key=value per line."""
    text = (
        f"cx={g.center_x!r}\ncy={g.center_y!r}\n"
        f"r_pupil={g.r_pupil!r}\nr_iris={g.r_iris!r}\nlambda={lam!r}\n"
    )
    Path(path).write_text(text, encoding="utf-8")


def read_sidecar(path) -> IrisGeometry:
    """Parse a sidecar back into a geometry (the lambda line is redundant and ignored)."""
    values: dict[str, float] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ManifestError(f"{path}:{lineno}: expected key=value")
        try:
            values[key.strip()] = float(val)
        except ValueError as exc:
            raise ManifestError(f"{path}:{lineno}: bad number: {exc}") from exc
    try:
        return IrisGeometry(values["cx"], values["cy"], values["r_pupil"], values["r_iris"])
    except KeyError as exc:
        raise ManifestError(f"{path}: missing sidecar key {exc}") from exc


def _level_tag(lam: float) -> str:
    return f"lam{round(lam * 1000):03d}"


def augment_record(
    rec: DatasetRecord,
    plan: AugmentationPlan,
    method: SamplingMethod,
    out_dir,
) -> list[Path]:
    """Render one record at every plan level; returns the image/mask paths written."""
    out_dir = Path(out_dir)
    g = rec.geometry()
    image = load_image(rec.image_path, Semantics.INTENSITY)
    mask = load_image(rec.mask_path, Semantics.LABEL) if rec.mask_path else None

    outputs: list[Path] = []

    def emit(path: Path, geometry: IrisGeometry, lam: float):
        outputs.append(path)
        write_sidecar(path.with_suffix(".geom"), geometry, lam)

    if plan.include_original:
        lam0 = dilation_level(g)
        orig = out_dir / f"{rec.image_path.stem}_orig{rec.image_path.suffix}"
        shutil.copyfile(rec.image_path, orig)
        emit(orig, g, lam0)
        if mask is not None:
            orig_mask = out_dir / f"{rec.mask_path.stem}_orig{rec.mask_path.suffix}"
            shutil.copyfile(rec.mask_path, orig_mask)
            emit(orig_mask, g, lam0)

    for lam in plan.levels:
        tag = _level_tag(lam)
        res = remap_dilation(image, g, lam, method)
        img_path = out_dir / f"{rec.image_path.stem}_{tag}.png"
        save_image(res.image, img_path)
        emit(img_path, res.geometry, res.lam)
        if mask is not None:
            mres = remap_mask(mask, g, lam)
            mask_path = out_dir / f"{rec.mask_path.stem}_{tag}.png"
            save_image(mres.image, mask_path)
            emit(mask_path, mres.geometry, mres.lam)

    return outputs


def run_manifest(
    manifest: DatasetManifest,
    plan: AugmentationPlan,
    method: SamplingMethod,
    out_dir,
    workers: int = 1,
) -> RunSummary:
    """Augment every record once; per-record failures are logged and skipped."""
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()

    def one(rec: DatasetRecord) -> int | None:
        try:
            return len(augment_record(rec, plan, method, out_dir))
        except (DilationError, OSError) as exc:
            log.error("skipping %s: %s", rec.image_path, exc)
            return None

    if workers == 1:
        results = [one(rec) for rec in manifest.records]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, manifest.records))

    processed = sum(1 for r in results if r is not None)
    outputs = sum(r for r in results if r is not None)
    skipped = len(results) - processed
    return RunSummary(processed, skipped, outputs, time.perf_counter() - start)
