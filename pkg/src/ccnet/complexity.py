"""Per-image and per-dataset complexity metrics.

Metrics operate on 8-bit grayscale rasters:

* signal energy: mean of squared normalized intensity.
* edge complexity: mean normalized Sobel and Scharr gradient magnitude
  over a three-level image pyramid (full, half, quarter resolution, each
  level a 2x2 box-filter downsample of the previous). Each operator is
  normalized by its maximum possible response on 8-bit input, so the
  metric lies in [0, 1]. The result is the mean of the six per-level
  per-operator means; a pyramid level too small to have interior pixels
  contributes 0.
* jpeg complexity J: entropy-coded bit count of a pinned JPEG-style
  pipeline (see kernels.tables) divided by the raw bit count of the
  padded image.
* blob density B: foreground fraction of ground-truth masks, pooled
  over the whole dataset (total foreground pixels / total mask pixels).
* JB: the convex combination omega * J + (1 - omega) * B.

Dataset values are arithmetic means of per-image values, accumulated in
ascending lexicographic file-path order so results are bit-identical
regardless of worker count.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DomainError, EmptyInputError, ManifestError, SizeError
from .kernels.tables import SCHARR_MAX, SCHARR_X, SCHARR_Y, SOBEL_MAX, SOBEL_X, SOBEL_Y
from .raster import BinaryMask, RasterImage, load_image, load_mask, to_gray

THREADS_ENV = "CCNET_THREADS"

PROFILE_FIELDS = ("dataset_name", "image_count", "energy", "edge", "jpeg_j", "blob_b", "jb")


@dataclass(frozen=True)
class ComplexityProfile:
    """Averaged complexity metrics for one dataset.

    energy and edge may be None for published reference profiles where
    only J and B are known; blob_b is None when the dataset has no
    masks; jb is None until an omega has been chosen.
    """

    dataset_name: str
    image_count: int
    energy: float | None
    edge: float | None
    jpeg_j: float
    blob_b: float | None = None
    jb: float | None = None

    def with_jb(self, omega: float) -> "ComplexityProfile":
        """Return a copy with jb filled in from J and B at the given omega."""
        if self.blob_b is None:
            raise DomainError(f"profile {self.dataset_name!r} has no blob density")
        return replace(self, jb=combine_jb(self.jpeg_j, self.blob_b, omega))

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in PROFILE_FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "ComplexityProfile":
        return cls(**{name: d.get(name) for name in PROFILE_FIELDS})


@dataclass(frozen=True)
class DatasetManifest:
    """Pointer to a dataset on disk.

    mask files are located as masks_dir / (image stem + mask_suffix);
    mask_suffix defaults to ".png" when masks_dir is set.
    """

    name: str
    images_dir: Path
    images_glob: str
    masks_dir: Path | None = None
    mask_suffix: str | None = None

    @property
    def has_masks(self) -> bool:
        return self.masks_dir is not None

    def mask_path(self, image_path: Path) -> Path:
        suffix = self.mask_suffix if self.mask_suffix is not None else ".png"
        return Path(self.masks_dir) / (image_path.stem + suffix)

    def image_paths(self) -> list[Path]:
        return sorted(Path(self.images_dir).glob(self.images_glob), key=str)


def load_manifest(path: str | Path) -> DatasetManifest:
    """Read a manifest JSON file; relative dirs resolve against its location."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"{path}: cannot read manifest ({exc})") from exc
    for key in ("name", "images_dir", "images_glob"):
        if key not in raw:
            raise ManifestError(f"{path}: manifest missing required key {key!r}")
    base = path.parent

    def _resolve(p):
        p = Path(p)
        return p if p.is_absolute() else base / p

    return DatasetManifest(
        name=str(raw["name"]),
        images_dir=_resolve(raw["images_dir"]),
        images_glob=str(raw["images_glob"]),
        masks_dir=_resolve(raw["masks_dir"]) if raw.get("masks_dir") else None,
        mask_suffix=raw.get("mask_suffix"),
    )


def _as_gray_f64(img) -> np.ndarray:
    """Accept a grayscale RasterImage or 2-D array; return float64 pixels."""
    if isinstance(img, RasterImage):
        if img.channels != 1:
            raise DomainError("metric requires a grayscale image; apply to_gray first")
        arr = img.pixels
    else:
        arr = np.asarray(img)
        if arr.ndim != 2:
            raise DomainError(f"expected a 2-D grayscale array, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptyInputError("zero-pixel image")
    return arr.astype(np.float64)


def signal_energy(img) -> float:
    """Mean of (sample / 255)^2; 0 for black, 1 for white."""
    arr = _as_gray_f64(img)
    return float(np.mean((arr / 255.0) ** 2))


def edge_complexity(img) -> float:
    """Normalized Sobel+Scharr gradient mean over a 3-level pyramid."""
    arr = _as_gray_f64(img)
    h, w = arr.shape
    if h < 4 or w < 4:
        raise SizeError(f"edge complexity requires at least 4x4 pixels, got {h}x{w}")
    levels = [arr]
    levels.append(kernels.box_down2(levels[0]))
    levels.append(kernels.box_down2(levels[1]))
    means = []
    for level in levels:
        for kx, ky, norm in (
            (SOBEL_X, SOBEL_Y, SOBEL_MAX),
            (SCHARR_X, SCHARR_Y, SCHARR_MAX),
        ):
            if level.shape[0] < 3 or level.shape[1] < 3:
                means.append(0.0)
                continue
            mag = kernels.grad_magnitude(level, kx, ky)
            means.append(float(np.mean(mag)) / norm)
    return sum(means) / 6.0


def jpeg_complexity(img) -> float:
    """Estimated entropy-coded bits over raw bits (J)."""
    arr = _as_gray_f64(img)
    h, w = arr.shape
    pad_h = (-h) % 8
    pad_w = (-w) % 8
    if pad_h or pad_w:
        arr = np.pad(arr, ((0, pad_h), (0, pad_w)), mode="edge")
    shifted = arr - 128.0
    bits = kernels.jpeg_bit_cost(shifted)
    return bits / (8.0 * shifted.shape[0] * shifted.shape[1])


def blob_density(mask: BinaryMask | np.ndarray) -> float:
    """Foreground pixel fraction of one mask."""
    flags = mask.flags if isinstance(mask, BinaryMask) else np.asarray(mask, dtype=bool)
    if flags.size == 0:
        raise EmptyInputError("zero-pixel mask")
    return float(np.count_nonzero(flags)) / flags.size


def combine_jb(j: float, b: float, omega: float) -> float:
    """JB = omega * J + (1 - omega) * B."""
    if not 0.0 <= omega <= 1.0:
        raise DomainError(f"omega must lie in [0, 1], got {omega}")
    return omega * j + (1.0 - omega) * b


@dataclass(frozen=True)
class ImageMetrics:
    """Per-image metric row, used for the optional CSV dump."""

    path: Path
    energy: float
    edge: float
    jpeg_j: float
    fg_pixels: int | None = None
    mask_pixels: int | None = None


def _measure_one(item: tuple[Path, Path | None]) -> ImageMetrics:
    img_path, mask_path = item
    gray = to_gray(load_image(img_path))
    fg = px = None
    if mask_path is not None:
        mask = load_mask(mask_path)
        fg = int(np.count_nonzero(mask.flags))
        px = int(mask.flags.size)
    return ImageMetrics(
        path=img_path,
        energy=signal_energy(gray),
        edge=edge_complexity(gray),
        jpeg_j=jpeg_complexity(gray),
        fg_pixels=fg,
        mask_pixels=px,
    )


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def analyze_dataset(
    manifest: DatasetManifest, threads: int | None = None
) -> tuple[ComplexityProfile, list[ImageMetrics]]:
    """Compute the dataset profile plus per-image rows.

    Per-image work may run on a thread pool (capped by the threads
    argument, falling back to CCNET_THREADS, 0 = auto); the reduction
    always runs in ascending lexicographic path order.
    """
    paths = manifest.image_paths()
    if not paths:
        raise EmptyInputError(f"empty dataset: no images match {manifest.images_glob!r} "
                              f"under {manifest.images_dir}")
    items: list[tuple[Path, Path | None]] = []
    for p in paths:
        mask_path = None
        if manifest.has_masks:
            mask_path = manifest.mask_path(p)
            if not mask_path.is_file():
                raise ManifestError(
                    f"dataset {manifest.name!r}: missing mask for image stem {p.stem!r} "
                    f"(expected {mask_path})"
                )
        items.append((p, mask_path))

    threads = _resolve_threads(threads)
    if threads == 1 or len(items) == 1:
        rows = [_measure_one(it) for it in items]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_measure_one, items))

    energy = float(np.mean([r.energy for r in rows]))
    edge = float(np.mean([r.edge for r in rows]))
    jpeg_j = float(np.mean([r.jpeg_j for r in rows]))
    blob_b = None
    if manifest.has_masks:
        fg_total = sum(r.fg_pixels for r in rows)
        px_total = sum(r.mask_pixels for r in rows)
        blob_b = fg_total / px_total
    profile = ComplexityProfile(
        dataset_name=manifest.name,
        image_count=len(rows),
        energy=energy,
        edge=edge,
        jpeg_j=jpeg_j,
        blob_b=blob_b,
    )
    return profile, rows


def dataset_complexity(manifest: DatasetManifest, threads: int | None = None) -> ComplexityProfile:
    """Averaged complexity profile of a dataset (see analyze_dataset)."""
    profile, _ = analyze_dataset(manifest, threads=threads)
    return profile


def save_profile(profile: ComplexityProfile, path: str | Path) -> None:
    Path(path).write_text(json.dumps(profile.to_dict(), indent=2) + "\n", encoding="utf-8")


def load_profile(path: str | Path) -> ComplexityProfile:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    missing = [k for k in ("dataset_name", "image_count", "jpeg_j") if k not in raw]
    if missing:
        raise ManifestError(f"{path}: profile missing keys {missing}")
    return ComplexityProfile.from_dict(raw)
