"""Constant tables shared by both kernel backends.

The JPEG-style bit-cost estimator is pinned to one exact recipe so the
metric is reproducible bit for bit: orthonormal 8x8 type-II DCT, the
baseline luminance quantization table at quality 50 (which leaves the
table unscaled), half-away-from-zero rounding, and the baseline
luminance Huffman code lengths for DC categories and AC (run, size)
symbols. Only entropy-coded bits are counted; container bytes are not.
"""

import numpy as np

# Baseline luminance quantization table, quality 50 (unscaled).
QUANT_LUMA = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.float64,
)

# Zigzag scan: position k in the scan -> flat row-major index into the block.
ZIGZAG = np.array(
    [
        0, 1, 8, 16, 9, 2, 3, 10,
        17, 24, 32, 25, 18, 11, 4, 5,
        12, 19, 26, 33, 40, 48, 41, 34,
        27, 20, 13, 6, 7, 14, 21, 28,
        35, 42, 49, 56, 57, 50, 43, 36,
        29, 22, 15, 23, 30, 37, 44, 51,
        58, 59, 52, 45, 38, 31, 39, 46,
        53, 60, 61, 54, 47, 55, 62, 63,
    ],
    dtype=np.int64,
)

# Code length of the baseline luminance DC Huffman table, by category 0..11.
DC_CODE_LEN = np.array([2, 3, 3, 3, 3, 3, 4, 5, 6, 7, 8, 9], dtype=np.int64)

# Code lengths of the baseline luminance AC Huffman table.
# AC_CODE_LEN[run][size] for run 0..15, size 1..10; column 0 holds the two
# special symbols: [0][0] = EOB, [15][0] = ZRL. Other [run][0] entries are
# unused and left at 0.
AC_CODE_LEN = np.array(
    [
        [4, 2, 2, 3, 4, 5, 7, 8, 10, 16, 16],
        [0, 4, 5, 7, 9, 11, 16, 16, 16, 16, 16],
        [0, 5, 8, 10, 12, 16, 16, 16, 16, 16, 16],
        [0, 6, 9, 12, 16, 16, 16, 16, 16, 16, 16],
        [0, 6, 10, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 7, 11, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 7, 12, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 8, 12, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 9, 15, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 9, 16, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 9, 16, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 10, 16, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 10, 16, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 11, 16, 16, 16, 16, 16, 16, 16, 16, 16],
        [0, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16],
        [11, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    ],
    dtype=np.int64,
)


def _dct_matrix_1d() -> np.ndarray:
    """Orthonormal 8-point type-II DCT matrix."""
    t = np.empty((8, 8), dtype=np.float64)
    for k in range(8):
        scale = np.sqrt(1.0 / 8.0) if k == 0 else np.sqrt(2.0 / 8.0)
        for n in range(8):
            t[k, n] = scale * np.cos((2 * n + 1) * k * np.pi / 16.0)
    return t


# 64x64 operator: forward 2-D DCT of a row-major flattened 8x8 block.
# Both backends apply it with the same BLAS dgemv call so the metric is
# bit-identical whichever backend runs.
_T = _dct_matrix_1d()
DCT_2D = np.ascontiguousarray(np.kron(_T, _T))

# Flattened quantization divisors in row-major block order.
QUANT_FLAT = np.ascontiguousarray(QUANT_LUMA.reshape(64))

# Gradient operators (cross-correlation form) and their maximum possible
# magnitude response on 8-bit input: sum of positive taps * 255 * sqrt(2).
SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
SOBEL_Y = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=np.float64)
SCHARR_X = np.array([[-3, 0, 3], [-10, 0, 10], [-3, 0, 3]], dtype=np.float64)
SCHARR_Y = np.array([[-3, -10, -3], [0, 0, 0], [3, 10, 3]], dtype=np.float64)
SOBEL_MAX = 4.0 * 255.0 * np.sqrt(2.0)
SCHARR_MAX = 16.0 * 255.0 * np.sqrt(2.0)
