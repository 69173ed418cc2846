import numpy as np
import pytest

from ccnet.complexity import (
    blob_density,
    combine_jb,
    edge_complexity,
    jpeg_complexity,
    signal_energy,
)
from ccnet.errors import DomainError, EmptyInputError, SizeError
from ccnet.raster import BinaryMask, RasterImage

from oracles import edge_complexity_oracle, jpeg_complexity_oracle

# Frozen oracle outputs (computed once with tests/oracles.py).
EDGE_STEP_64 = 0.05698853423387742
J_CONST_128 = 0.01171875
J_CONST_200 = 0.011962890625
J_NOISE_SEED5 = 0.429473876953125


class TestSignalEnergy:
    def test_black_is_zero(self):
        assert signal_energy(np.zeros((8, 8), np.uint8)) == 0.0

    def test_white_is_one(self):
        assert signal_energy(np.full((8, 8), 255, np.uint8)) == 1.0

    def test_mid_gray(self):
        expected = (128.0 / 255.0) ** 2
        assert signal_energy(np.full((5, 7), 128, np.uint8)) == pytest.approx(expected, abs=1e-15)

    def test_empty_errors(self):
        with pytest.raises(EmptyInputError):
            signal_energy(np.zeros((0, 4), np.uint8))

    def test_rejects_color(self):
        img = RasterImage(np.zeros((4, 4, 3), np.uint8))
        with pytest.raises(DomainError):
            signal_energy(img)


class TestEdgeComplexity:
    def test_constant_is_zero(self):
        assert edge_complexity(np.full((16, 16), 77, np.uint8)) == 0.0

    def test_step_matches_frozen_oracle(self, step_64):
        value = edge_complexity(step_64)
        assert value == EDGE_STEP_64
        assert value == edge_complexity_oracle(step_64)

    def test_matches_oracle_on_random_images(self, rng):
        for _ in range(5):
            h = int(rng.integers(4, 40))
            w = int(rng.integers(4, 40))
            img = rng.integers(0, 256, (h, w)).astype(np.uint8)
            assert edge_complexity(img) == pytest.approx(
                edge_complexity_oracle(img), abs=1e-15
            )

    def test_rotation_invariance(self, rng):
        img = rng.integers(0, 256, (32, 32)).astype(np.uint8)
        rotated = np.rot90(img).copy()
        assert edge_complexity(img) == pytest.approx(edge_complexity(rotated), abs=1e-12)

    def test_bounds(self, rng):
        for _ in range(5):
            img = rng.integers(0, 256, (24, 24)).astype(np.uint8)
            assert 0.0 <= edge_complexity(img) <= 1.0

    def test_too_small_errors(self):
        with pytest.raises(SizeError):
            edge_complexity(np.zeros((3, 8), np.uint8))

    def test_minimum_size_works(self):
        # 4x4 degenerates to a 1x1 quarter level, which contributes 0.
        assert edge_complexity(np.zeros((4, 4), np.uint8)) == 0.0


class TestJpegComplexity:
    def test_constant_frozen_fixture(self):
        assert jpeg_complexity(np.full((64, 64), 128, np.uint8)) == J_CONST_128
        assert jpeg_complexity(np.full((64, 64), 200, np.uint8)) == J_CONST_200

    def test_noise_frozen_fixture(self, noise_64):
        assert jpeg_complexity(noise_64) == J_NOISE_SEED5

    def test_noise_exceeds_constant(self, noise_64):
        const = np.full((64, 64), 128, np.uint8)
        assert jpeg_complexity(noise_64) > jpeg_complexity(const)
        assert edge_complexity(noise_64) > edge_complexity(const)

    def test_matches_oracle(self, noise_64, step_64):
        for img in (noise_64, step_64, np.full((64, 64), 0, np.uint8)):
            assert jpeg_complexity(img) == jpeg_complexity_oracle(img)

    def test_non_multiple_of_8_padding(self):
        img = np.random.default_rng(1).integers(0, 256, (37, 53)).astype(np.uint8)
        value = jpeg_complexity(img)
        assert value == 0.42332589285714284
        assert value == jpeg_complexity_oracle(img)

    def test_identity_under_adding_zero(self, noise_64):
        assert jpeg_complexity(noise_64 + 0) == jpeg_complexity(noise_64)

    def test_positive(self):
        assert jpeg_complexity(np.zeros((8, 8), np.uint8)) > 0.0

    def test_empty_errors(self):
        with pytest.raises(EmptyInputError):
            jpeg_complexity(np.zeros((0, 0), np.uint8))


class TestBlobDensity:
    def test_saturated(self):
        assert blob_density(BinaryMask(np.ones((10, 10), bool))) == 1.0

    def test_empty_foreground(self):
        assert blob_density(BinaryMask(np.zeros((10, 10), bool))) == 0.0

    def test_direct_count(self):
        flags = np.zeros((10, 10), bool)
        flags.flat[:7] = True
        assert blob_density(BinaryMask(flags)) == 0.07

    def test_zero_pixels_error(self):
        with pytest.raises(EmptyInputError):
            blob_density(np.zeros((0, 3), bool))


class TestCombineJB:
    def test_omega_selects_j(self):
        assert combine_jb(0.2401, 0.5711, 1.0) == 0.2401

    def test_omega_selects_b(self):
        assert combine_jb(0.2401, 0.5711, 0.0) == 0.5711

    def test_midpoint(self):
        assert combine_jb(0.2, 0.4, 0.5) == pytest.approx(0.3, abs=1e-15)

    @pytest.mark.parametrize("omega", [-0.1, 1.1, 2.0])
    def test_domain(self, omega):
        with pytest.raises(DomainError):
            combine_jb(0.1, 0.2, omega)

    def test_linear_in_omega_and_monotone(self, rng):
        for _ in range(50):
            j, b = rng.uniform(0, 1, 2)
            w1, w2 = sorted(rng.uniform(0, 1, 2))
            mid = combine_jb(j, b, (w1 + w2) / 2)
            lerp = 0.5 * (combine_jb(j, b, w1) + combine_jb(j, b, w2))
            assert mid == pytest.approx(lerp, abs=1e-12)
            if j >= b:
                assert combine_jb(j, b, w2) >= combine_jb(j, b, w1) - 1e-15


def test_metrics_deterministic_across_runs(noise_64):
    a = (signal_energy(noise_64), edge_complexity(noise_64), jpeg_complexity(noise_64))
    b = (signal_energy(noise_64), edge_complexity(noise_64), jpeg_complexity(noise_64))
    assert a == b
