"""Backend parity: the numba kernels and the numpy fallback must agree
bit for bit, and the env flag must drive selection."""

import os
import subprocess
import sys

import numpy as np

from ccnet.kernels import numba_impl, numpy_impl
from ccnet.kernels.tables import SOBEL_X, SOBEL_Y


def test_backends_bitwise_identical_on_corpus():
    rng = np.random.default_rng(42)
    for _ in range(20):
        h = int(rng.integers(8, 70))
        w = int(rng.integers(8, 70))
        img = rng.integers(0, 256, (h, w)).astype(np.float64)

        g_nb = numba_impl.grad_magnitude(img, SOBEL_X, SOBEL_Y)
        g_np = numpy_impl.grad_magnitude(img, SOBEL_X, SOBEL_Y)
        assert np.array_equal(g_nb, g_np)

        d_nb = numba_impl.box_down2(img)
        d_np = numpy_impl.box_down2(img)
        assert np.array_equal(d_nb, d_np)

        padded = np.pad(img, ((0, -h % 8), (0, -w % 8)), mode="edge") - 128.0
        assert numba_impl.jpeg_bit_cost(padded) == numpy_impl.jpeg_bit_cost(padded)


def test_env_flag_selects_backend():
    for want in ("numpy", "numba"):
        env = dict(os.environ, CCNET_KERNELS=want)
        out = subprocess.run(
            [sys.executable, "-c", "import ccnet.kernels as k; print(k.BACKEND)"],
            env=env, capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == want


def test_bad_env_flag_rejected():
    env = dict(os.environ, CCNET_KERNELS="cuda")
    out = subprocess.run(
        [sys.executable, "-c", "import ccnet.kernels"],
        env=env, capture_output=True, text=True,
    )
    assert out.returncode != 0
    assert "CCNET_KERNELS" in out.stderr
