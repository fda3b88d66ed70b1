"""Throughput harness for the remap kernel.

Timing wraps the remap call only; image decode/encode is excluded because
real augmentation workloads keep the frame in memory. Each iteration targets
the next level of the standard 19-level plan so the branch mix matches a
real batch job instead of hammering one constant.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import DomainError
from .geometry import IrisGeometry
from .imaging import PixelGrid
from .pipeline import build_plan
from .resampler import SamplingMethod, remap_dilation

WARMUP_ITERS = 3


@dataclass(frozen=True)
class BenchReport:
    n_images: int
    total_ms: float
    ms_per_image: float
    images_per_sec: float
    image_shape: tuple[int, int, int]
    method: SamplingMethod
    threads: int

    def line(self) -> str:
        w, h, c = self.image_shape
        return (
            f"n={self.n_images} total_ms={self.total_ms:.3f} "
            f"ms_per_image={self.ms_per_image:.3f} images_per_sec={self.images_per_sec:.1f} "
            f"shape={w}x{h}x{c} method={self.method.value} threads={self.threads}"
        )


def run_bench(
    image: PixelGrid,
    g: IrisGeometry,
    n_iters: int,
    method: SamplingMethod = SamplingMethod.NEAREST,
    threads: int = 1,
) -> BenchReport:
    """Remap the image n_iters times, cycling the dilation target; report wall time."""
    if n_iters < 10:
        raise DomainError(f"need at least 10 iterations for a stable figure, got {n_iters}")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    levels = build_plan(19, 0.15, 0.75).levels
    targets = [levels[i % len(levels)] for i in range(n_iters)]

    for lam in targets[:WARMUP_ITERS]:
        remap_dilation(image, g, lam, method)

    if threads == 1:
        t0 = time.perf_counter()
        for lam in targets:
            remap_dilation(image, g, lam, method)
        elapsed = time.perf_counter() - t0
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            t0 = time.perf_counter()
            list(pool.map(lambda lam: remap_dilation(image, g, lam, method), targets))
            elapsed = time.perf_counter() - t0

    total_ms = elapsed * 1000.0
    ms_per_image = total_ms / n_iters
    return BenchReport(
        n_images=n_iters,
        total_ms=total_ms,
        ms_per_image=ms_per_image,
        images_per_sec=1000.0 / ms_per_image,
        image_shape=(image.width, image.height, image.channels),
        method=method,
        threads=threads,
    )
