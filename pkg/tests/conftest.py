import sys
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parent))


def write_pgm(path, arr):
    arr = np.asarray(arr, dtype=np.uint8)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode()
    Path(path).write_bytes(header + arr.tobytes())


def write_pgm16(path, arr):
    arr = np.asarray(arr, dtype=np.uint16)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n65535\n".encode()
    Path(path).write_bytes(header + arr.astype(">u2").tobytes())


def write_ppm(path, arr):
    arr = np.asarray(arr, dtype=np.uint8)
    header = f"P6\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode()
    Path(path).write_bytes(header + arr.tobytes())


def write_png(path, arr):
    Image.fromarray(np.asarray(arr, dtype=np.uint8)).save(path, format="PNG")


@pytest.fixture
def rng():
    return np.random.default_rng(5)


@pytest.fixture
def noise_64(rng):
    """The fixed-seed noise image used by the frozen JPEG fixtures."""
    return rng.integers(0, 256, (64, 64)).astype(np.uint8)


@pytest.fixture
def step_64():
    img = np.zeros((64, 64), np.uint8)
    img[:, 32:] = 255
    return img
