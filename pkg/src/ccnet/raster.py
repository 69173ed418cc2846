"""Raster image and mask types plus file decoding.

Decoding is delegated to Pillow but restricted to PNG and netpbm
(PGM/PPM) sources. Everything downstream works on 8-bit samples; 16-bit
sources are rescaled once at load time by integer division by 257, which
maps 0 -> 0 and 65535 -> 255.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, DomainError, UnsupportedFormatError

_ALLOWED_FORMATS = {"PNG", "PPM"}  # Pillow reports PGM/PPM/PBM all as "PPM"


@dataclass(frozen=True)
class RasterImage:
    """8-bit image, grayscale (h, w) or RGB (h, w, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        p = self.pixels
        if p.dtype != np.uint8:
            raise DomainError(f"pixels must be uint8, got {p.dtype}")
        if p.ndim == 2:
            pass
        elif p.ndim == 3 and p.shape[2] == 3:
            pass
        else:
            raise DomainError(f"pixels must be (h, w) or (h, w, 3), got shape {p.shape}")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise DomainError("image must have at least one pixel")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    @property
    def data(self) -> np.ndarray:
        """Row-major flattened samples."""
        return self.pixels.reshape(-1)


@dataclass(frozen=True)
class BinaryMask:
    """Per-pixel foreground flags."""

    flags: np.ndarray

    def __post_init__(self):
        f = self.flags
        if f.dtype != np.bool_ or f.ndim != 2:
            raise DomainError(f"flags must be a 2-D bool array, got {f.dtype} {f.shape}")
        if f.shape[0] < 1 or f.shape[1] < 1:
            raise DomainError("mask must have at least one pixel")

    @property
    def height(self) -> int:
        return self.flags.shape[0]

    @property
    def width(self) -> int:
        return self.flags.shape[1]


def load_image(path: str | Path) -> RasterImage:
    """Decode a PNG, PGM, or PPM file into an 8-bit raster."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            fmt = im.format
            if fmt not in _ALLOWED_FORMATS:
                raise UnsupportedFormatError(
                    f"{path}: unsupported format {fmt!r} (expected PNG, PGM, or PPM)"
                )
            im.load()
            mode = im.mode
            if mode in ("I", "I;16", "I;16B", "I;16L"):
                arr = np.asarray(im, dtype=np.int64)
                arr = np.clip(arr, 0, 65535) // 257
                return RasterImage(arr.astype(np.uint8))
            if mode in ("P", "RGBA", "LA", "PA"):
                im = im.convert("RGB")
                mode = "RGB"
            if mode == "1":
                im = im.convert("L")
                mode = "L"
            if mode not in ("L", "RGB"):
                raise UnsupportedFormatError(f"{path}: unsupported pixel mode {mode!r}")
            return RasterImage(np.asarray(im, dtype=np.uint8))
    except UnsupportedFormatError:
        raise
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"{path}: cannot decode image ({exc})") from exc


def to_gray(img: RasterImage) -> RasterImage:
    """Luminance conversion: round(0.299 R + 0.587 G + 0.114 B); identity on gray."""
    if img.channels == 1:
        return img
    p = img.pixels.astype(np.float64)
    lum = 0.299 * p[:, :, 0] + 0.587 * p[:, :, 1] + 0.114 * p[:, :, 2]
    return RasterImage(np.floor(lum + 0.5).astype(np.uint8))


def load_mask(path: str | Path) -> BinaryMask:
    """Load a ground-truth mask; samples above 127 count as foreground."""
    gray = to_gray(load_image(path))
    return BinaryMask(gray.pixels > 127)
