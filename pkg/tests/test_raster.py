import numpy as np
import pytest
from PIL import Image

from ccnet.errors import DecodeError, DomainError, UnsupportedFormatError
from ccnet.raster import BinaryMask, RasterImage, load_image, load_mask, to_gray

from conftest import write_pgm, write_pgm16, write_png, write_ppm


def test_load_pgm_identity(tmp_path):
    p = tmp_path / "t.pgm"
    write_pgm(p, np.array([[0, 255], [128, 64]]))
    img = load_image(p)
    assert (img.width, img.height, img.channels) == (2, 2, 1)
    assert img.data.tolist() == [0, 255, 128, 64]


def test_load_ppm_identity(tmp_path):
    p = tmp_path / "t.ppm"
    write_ppm(p, np.array([[[10, 20, 30]]]))
    img = load_image(p)
    assert (img.width, img.height, img.channels) == (1, 1, 3)
    assert img.data.tolist() == [10, 20, 30]


def test_load_png_gray_and_rgb(tmp_path):
    write_png(tmp_path / "g.png", np.array([[7, 9], [11, 13]]))
    img = load_image(tmp_path / "g.png")
    assert img.channels == 1 and img.data.tolist() == [7, 9, 11, 13]
    write_png(tmp_path / "c.png", np.full((2, 2, 3), 42))
    img = load_image(tmp_path / "c.png")
    assert img.channels == 3 and int(img.pixels[0, 0, 2]) == 42


def test_load_16bit_rescales_by_257(tmp_path):
    p = tmp_path / "t16.pgm"
    write_pgm16(p, np.array([[0, 65535], [257, 514]]))
    img = load_image(p)
    assert img.data.tolist() == [0, 255, 1, 2]


def test_truncated_file_is_decode_error(tmp_path):
    p = tmp_path / "bad.pgm"
    p.write_bytes(b"P5\n64 64\n255\n" + bytes(10))
    with pytest.raises(DecodeError, match="bad.pgm"):
        load_image(p)


def test_missing_file_is_decode_error(tmp_path):
    with pytest.raises(DecodeError, match="nope.png"):
        load_image(tmp_path / "nope.png")


def test_unsupported_format_error(tmp_path):
    p = tmp_path / "t.bmp"
    Image.fromarray(np.zeros((4, 4), np.uint8)).save(p, format="BMP")
    with pytest.raises(UnsupportedFormatError):
        load_image(p)


def test_garbage_bytes_decode_error(tmp_path):
    p = tmp_path / "junk.png"
    p.write_bytes(b"this is not an image at all")
    with pytest.raises(DecodeError):
        load_image(p)


def test_to_gray_identity_on_gray():
    img = RasterImage(np.array([[5, 6], [7, 8]], np.uint8))
    assert to_gray(img) is img


def test_to_gray_white_and_red():
    white = RasterImage(np.full((1, 1, 3), 255, np.uint8))
    assert to_gray(white).data.tolist() == [255]
    red = RasterImage(np.array([[[255, 0, 0]]], np.uint8))
    # round(0.299 * 255) = 76
    assert to_gray(red).data.tolist() == [76]


def test_raster_rejects_bad_shapes():
    with pytest.raises(DomainError):
        RasterImage(np.zeros((2, 2), np.float64))
    with pytest.raises(DomainError):
        RasterImage(np.zeros((2, 2, 4), np.uint8))
    with pytest.raises(DomainError):
        BinaryMask(np.zeros((2, 2), np.uint8))


def test_load_mask_threshold(tmp_path):
    p = tmp_path / "m.pgm"
    write_pgm(p, np.array([[0, 127], [128, 255]]))
    mask = load_mask(p)
    assert mask.flags.tolist() == [[False, False], [True, True]]
