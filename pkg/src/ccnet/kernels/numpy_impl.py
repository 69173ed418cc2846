"""Pure-numpy fallback kernels.

These mirror the numba kernels operation for operation. Elementwise
arithmetic keeps the exact same expression shape, and the per-block DCT
uses the same np.dot call, so both backends produce bit-identical
results on identical input.
"""

import numpy as np

from .tables import AC_CODE_LEN, DC_CODE_LEN, DCT_2D, QUANT_FLAT, ZIGZAG


def grad_magnitude(img: np.ndarray, kx: np.ndarray, ky: np.ndarray) -> np.ndarray:
    """Gradient magnitude sqrt(gx^2 + gy^2) on interior pixels.

    img is float64 (h, w) with h, w >= 3; returns (h-2, w-2).
    """
    h, w = img.shape
    gx = np.zeros((h - 2, w - 2), dtype=np.float64)
    gy = np.zeros((h - 2, w - 2), dtype=np.float64)
    # Accumulate in fixed tap order (zero taps included: adding 0.0 is exact).
    for i in range(3):
        for j in range(3):
            win = img[i : i + h - 2, j : j + w - 2]
            gx = gx + kx[i, j] * win
            gy = gy + ky[i, j] * win
    return np.sqrt(gx * gx + gy * gy)


def box_down2(img: np.ndarray) -> np.ndarray:
    """2x2 box-filter downsample, trailing odd row/column discarded."""
    h2 = img.shape[0] // 2
    w2 = img.shape[1] // 2
    a = img[0 : 2 * h2 : 2, 0 : 2 * w2 : 2]
    b = img[0 : 2 * h2 : 2, 1 : 2 * w2 : 2]
    c = img[1 : 2 * h2 : 2, 0 : 2 * w2 : 2]
    d = img[1 : 2 * h2 : 2, 1 : 2 * w2 : 2]
    return (((a + b) + c) + d) * 0.25


def jpeg_bit_cost(shifted: np.ndarray) -> int:
    """Entropy-coded bit count of the pinned JPEG-style pipeline.

    shifted is the level-shifted (value - 128) float64 image, already
    padded to multiples of 8 in both dimensions.
    """
    h, w = shifted.shape
    by = h // 8
    bx = w // 8
    bits = 0
    prev_dc = 0
    buf = np.empty(64, dtype=np.float64)
    for r in range(by):
        for c in range(bx):
            block = shifted[r * 8 : r * 8 + 8, c * 8 : c * 8 + 8]
            buf[:] = block.reshape(64)
            f = np.dot(DCT_2D, buf)
            q = f / QUANT_FLAT
            coeff = (np.sign(q) * np.floor(np.abs(q) + 0.5)).astype(np.int64)

            dc = int(coeff[0])
            diff = dc - prev_dc
            prev_dc = dc
            cat = _category(diff)
            bits += int(DC_CODE_LEN[cat]) + cat

            run = 0
            for k in range(1, 64):
                v = int(coeff[ZIGZAG[k]])
                if v == 0:
                    run += 1
                    continue
                while run > 15:
                    bits += int(AC_CODE_LEN[15, 0])  # ZRL
                    run -= 16
                size = _category(v)
                bits += int(AC_CODE_LEN[run, size]) + size
                run = 0
            if run > 0:
                bits += int(AC_CODE_LEN[0, 0])  # EOB
    return bits


def _category(v: int) -> int:
    """Bit category of a coefficient: 0 for 0, else bit length of |v|."""
    return abs(v).bit_length()
