"""Numba-compiled kernels (default backend).

Same operation order as numpy_impl so results are bit-identical across
backends; cache=True keeps compilation a one-time cost per environment.
"""

import numpy as np
from numba import njit

from .tables import AC_CODE_LEN, DC_CODE_LEN, DCT_2D, QUANT_FLAT, ZIGZAG


@njit(cache=True, nogil=True)
def _grad_magnitude(img, kx, ky):
    h, w = img.shape
    out = np.empty((h - 2, w - 2), dtype=np.float64)
    for y in range(h - 2):
        for x in range(w - 2):
            gx = 0.0
            gy = 0.0
            for i in range(3):
                for j in range(3):
                    v = img[y + i, x + j]
                    gx = gx + kx[i, j] * v
                    gy = gy + ky[i, j] * v
            out[y, x] = np.sqrt(gx * gx + gy * gy)
    return out


@njit(cache=True, nogil=True)
def _box_down2(img):
    h2 = img.shape[0] // 2
    w2 = img.shape[1] // 2
    out = np.empty((h2, w2), dtype=np.float64)
    for y in range(h2):
        for x in range(w2):
            a = img[2 * y, 2 * x]
            b = img[2 * y, 2 * x + 1]
            c = img[2 * y + 1, 2 * x]
            d = img[2 * y + 1, 2 * x + 1]
            out[y, x] = (((a + b) + c) + d) * 0.25
    return out


@njit(cache=True, nogil=True)
def _jpeg_bit_cost(shifted, dct2d, quant, zigzag, dc_len, ac_len):
    h, w = shifted.shape
    by = h // 8
    bx = w // 8
    bits = 0
    prev_dc = 0
    buf = np.empty(64, dtype=np.float64)
    for r in range(by):
        for c in range(bx):
            for i in range(8):
                for j in range(8):
                    buf[8 * i + j] = shifted[r * 8 + i, c * 8 + j]
            f = np.dot(dct2d, buf)

            dc = 0
            coeff = np.empty(64, dtype=np.int64)
            for k in range(64):
                q = f[k] / quant[k]
                if q >= 0.0:
                    coeff[k] = np.int64(np.floor(q + 0.5))
                else:
                    coeff[k] = -np.int64(np.floor(-q + 0.5))
            dc = coeff[0]

            diff = dc - prev_dc
            prev_dc = dc
            cat = 0
            a = diff if diff >= 0 else -diff
            while a > 0:
                a >>= 1
                cat += 1
            bits += dc_len[cat] + cat

            run = 0
            for k in range(1, 64):
                v = coeff[zigzag[k]]
                if v == 0:
                    run += 1
                    continue
                while run > 15:
                    bits += ac_len[15, 0]  # ZRL
                    run -= 16
                size = 0
                a = v if v >= 0 else -v
                while a > 0:
                    a >>= 1
                    size += 1
                bits += ac_len[run, size] + size
                run = 0
            if run > 0:
                bits += ac_len[0, 0]  # EOB
    return bits


def grad_magnitude(img: np.ndarray, kx: np.ndarray, ky: np.ndarray) -> np.ndarray:
    return _grad_magnitude(
        np.ascontiguousarray(img),
        np.ascontiguousarray(kx),
        np.ascontiguousarray(ky),
    )


def box_down2(img: np.ndarray) -> np.ndarray:
    return _box_down2(np.ascontiguousarray(img))


def jpeg_bit_cost(shifted: np.ndarray) -> int:
    return int(
        _jpeg_bit_cost(
            np.ascontiguousarray(shifted), DCT_2D, QUANT_FLAT, ZIGZAG, DC_CODE_LEN, AC_CODE_LEN
        )
    )


def warmup() -> None:
    """Force JIT compilation of all kernels on tiny inputs."""
    img = np.zeros((8, 8), dtype=np.float64)
    k = np.zeros((3, 3), dtype=np.float64)
    grad_magnitude(img, k, k)
    box_down2(img)
    jpeg_bit_cost(img)
