"""Independent reference implementations used as test oracles.

These deliberately avoid the package's kernel code paths: the DCT goes
through scipy.fft.dctn, the gradients through scipy.signal.correlate2d,
and the Huffman tables are spelled out separately.
"""

import numpy as np
from scipy.fft import dctn
from scipy.signal import correlate2d

QUANT = np.array(
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

ZIGZAG_RC = [
    (0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (0, 2), (0, 3), (1, 2),
    (2, 1), (3, 0), (4, 0), (3, 1), (2, 2), (1, 3), (0, 4), (0, 5),
    (1, 4), (2, 3), (3, 2), (4, 1), (5, 0), (6, 0), (5, 1), (4, 2),
    (3, 3), (2, 4), (1, 5), (0, 6), (0, 7), (1, 6), (2, 5), (3, 4),
    (4, 3), (5, 2), (6, 1), (7, 0), (7, 1), (6, 2), (5, 3), (4, 4),
    (3, 5), (2, 6), (1, 7), (2, 7), (3, 6), (4, 5), (5, 4), (6, 3),
    (7, 2), (7, 3), (6, 4), (5, 5), (4, 6), (3, 7), (4, 7), (5, 6),
    (6, 5), (7, 4), (7, 5), (6, 6), (5, 7), (6, 7), (7, 6), (7, 7),
]

DC_LEN = [2, 3, 3, 3, 3, 3, 4, 5, 6, 7, 8, 9]

_AC_ROWS = [
    [2, 2, 3, 4, 5, 7, 8, 10, 16, 16],
    [4, 5, 7, 9, 11, 16, 16, 16, 16, 16],
    [5, 8, 10, 12, 16, 16, 16, 16, 16, 16],
    [6, 9, 12, 16, 16, 16, 16, 16, 16, 16],
    [6, 10, 16, 16, 16, 16, 16, 16, 16, 16],
    [7, 11, 16, 16, 16, 16, 16, 16, 16, 16],
    [7, 12, 16, 16, 16, 16, 16, 16, 16, 16],
    [8, 12, 16, 16, 16, 16, 16, 16, 16, 16],
    [9, 15, 16, 16, 16, 16, 16, 16, 16, 16],
    [9, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    [9, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    [10, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    [10, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    [11, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    [16, 16, 16, 16, 16, 16, 16, 16, 16, 16],
    [16, 16, 16, 16, 16, 16, 16, 16, 16, 16],
]
AC_LEN = {(0, 0): 4, (15, 0): 11}
for _run, _row in enumerate(_AC_ROWS):
    for _size, _L in enumerate(_row, start=1):
        AC_LEN[(_run, _size)] = _L


def _category(v: int) -> int:
    return abs(int(v)).bit_length()


def jpeg_complexity_oracle(img_u8: np.ndarray) -> float:
    """Reference bit-rate estimate via scipy's DCT."""
    h, w = img_u8.shape
    arr = np.pad(
        img_u8.astype(np.float64), ((0, -h % 8), (0, -w % 8)), mode="edge"
    ) - 128.0
    height, width = arr.shape
    bits = 0
    prev_dc = 0
    for r in range(height // 8):
        for c in range(width // 8):
            block = arr[r * 8 : (r + 1) * 8, c * 8 : (c + 1) * 8]
            f = dctn(block, type=2, norm="ortho")
            q = f / QUANT
            coeff = (np.sign(q) * np.floor(np.abs(q) + 0.5)).astype(np.int64)
            dc = int(coeff[0, 0])
            cat = _category(dc - prev_dc)
            prev_dc = dc
            bits += DC_LEN[cat] + cat
            run = 0
            for i, j in ZIGZAG_RC[1:]:
                v = int(coeff[i, j])
                if v == 0:
                    run += 1
                    continue
                while run > 15:
                    bits += AC_LEN[(15, 0)]
                    run -= 16
                size = _category(v)
                bits += AC_LEN[(run, size)] + size
                run = 0
            if run > 0:
                bits += AC_LEN[(0, 0)]
    return bits / (8.0 * height * width)


def edge_complexity_oracle(img_u8: np.ndarray) -> float:
    """Reference edge metric via scipy correlation."""
    sx = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], float)
    sy = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], float)
    cx = np.array([[-3, 0, 3], [-10, 0, 10], [-3, 0, 3]], float)
    cy = np.array([[-3, -10, -3], [0, 0, 0], [3, 10, 3]], float)

    def down(a):
        h2, w2 = a.shape[0] // 2, a.shape[1] // 2
        return a[: 2 * h2, : 2 * w2].reshape(h2, 2, w2, 2).mean(axis=(1, 3))

    levels = [img_u8.astype(np.float64)]
    levels.append(down(levels[0]))
    levels.append(down(levels[1]))
    means = []
    for lv in levels:
        for kx, ky, norm in (
            (sx, sy, 4 * 255 * np.sqrt(2)),
            (cx, cy, 16 * 255 * np.sqrt(2)),
        ):
            if lv.shape[0] < 3 or lv.shape[1] < 3:
                means.append(0.0)
                continue
            gx = correlate2d(lv, kx, mode="valid")
            gy = correlate2d(lv, ky, mode="valid")
            means.append(float(np.mean(np.sqrt(gx**2 + gy**2))) / norm)
    return sum(means) / 6.0
