import numpy as np
import pytest

from irisdilate import (
    DomainError,
    GeometryError,
    IrisGeometry,
    PixelGrid,
    Semantics,
    SemanticsError,
    annulus_mask,
    dilation_level,
    eye_parsing_mask,
    iou,
    label_set,
    mean_abs_diff,
    remap_dilation,
    remap_mask,
    sample,
    synthetic_eye,
    target_geometry,
)
from irisdilate.resampler import SamplingMethod

from conftest import make_label, radius_grid

NEAREST = SamplingMethod.NEAREST
BILINEAR = SamplingMethod.BILINEAR


class TestSample:
    def test_lattice_point_is_exact(self, rng):
        data = rng.integers(0, 256, (8, 9), dtype=np.uint8)
        g = PixelGrid(data)
        assert sample(g, 4.0, 3.0, NEAREST) == data[3, 4]
        assert sample(g, 4.0, 3.0, BILINEAR) == data[3, 4]

    def test_clamp_to_corner(self, rng):
        data = rng.integers(0, 256, (6, 6), dtype=np.uint8)
        g = PixelGrid(data)
        assert sample(g, -5.0, -3.0, NEAREST) == data[0, 0]
        assert sample(g, 50.0, 50.0, NEAREST) == data[5, 5]
        assert sample(g, -5.0, -3.0, BILINEAR) == data[0, 0]

    def test_nearest_rounding_rule(self):
        # floor(x + 0.5): the half-way point belongs to the right/lower pixel
        data = np.arange(16, dtype=np.uint8).reshape(4, 4)
        g = PixelGrid(data)
        assert sample(g, 1.5, 0.0, NEAREST) == data[0, 2]
        assert sample(g, 1.499, 0.0, NEAREST) == data[0, 1]
        assert sample(g, 0.0, 2.5, NEAREST) == data[3, 0]

    def test_bilinear_midpoint(self):
        data = np.array([[10, 20]], dtype=np.uint8)
        assert sample(PixelGrid(data), 0.5, 0.0, BILINEAR) == 15

    def test_all_channels_share_the_source_location(self, rng):
        data = rng.integers(0, 256, (5, 5, 3), dtype=np.uint8)
        out = sample(PixelGrid(data), 2.2, 3.9, NEAREST)
        assert np.array_equal(out, data[4, 2])

    def test_array_coordinates(self, rng):
        data = rng.integers(0, 256, (7, 7), dtype=np.uint8)
        xs = np.array([[0.0, 6.0], [3.0, 2.0]])
        ys = np.array([[0.0, 6.0], [1.0, 5.0]])
        out = sample(PixelGrid(data), xs, ys, NEAREST)
        assert out.shape == (2, 2)
        assert out[1, 0] == data[1, 3]

    def test_nan_coordinates_rejected(self, rng):
        g = PixelGrid(rng.integers(0, 256, (4, 4), dtype=np.uint8))
        with pytest.raises(DomainError):
            sample(g, float("nan"), 0.0, NEAREST)

    def test_label_bilinear_rejected(self):
        with pytest.raises(SemanticsError):
            sample(make_label(np.zeros((4, 4))), 1.0, 1.0, BILINEAR)


class TestRemapDilation:
    def test_identity_is_byte_exact(self, eye_image, eye_geometry):
        res = remap_dilation(eye_image, eye_geometry, dilation_level(eye_geometry), NEAREST)
        assert res.image == eye_image

    @pytest.mark.parametrize("method", [NEAREST, BILINEAR])
    @pytest.mark.parametrize("lam", [0.2, 0.55, 0.74])
    def test_outside_iris_is_bit_identical(self, eye_image, eye_geometry, method, lam):
        res = remap_dilation(eye_image, eye_geometry, lam, method)
        outside = radius_grid(320, 280, eye_geometry) >= eye_geometry.r_iris + 1.0
        assert np.array_equal(res.image.data[outside], eye_image.data[outside])

    def test_result_metadata(self, eye_image, eye_geometry):
        res = remap_dilation(eye_image, eye_geometry, 0.55, NEAREST)
        assert (res.image.width, res.image.height) == (320, 280)
        assert res.geometry.r_iris == eye_geometry.r_iris
        assert (res.geometry.center_x, res.geometry.center_y) == (160.0, 140.0)
        assert dilation_level(res.geometry) == pytest.approx(res.lam, abs=1e-12)
        assert res.lam == pytest.approx(0.55, abs=1e-12)

    def test_bright_ring_moves_to_predicted_radius(self):
        # ring centered halfway across the annulus; after the remap it must sit
        # halfway across the *target* annulus. Peak radius found by brute-force
        # scan over the output pixels, independent of the sampling kernel.
        g = IrisGeometry(128.0, 128.0, 30.0, 120.0)
        r = radius_grid(256, 256, g)
        r0 = 30.0 + 0.5 * (120.0 - 30.0)
        img = PixelGrid((np.abs(r - r0) < 1.5).astype(np.uint8) * 255)

        lam2 = 0.5
        res = remap_dilation(img, g, lam2, NEAREST)
        r2 = lam2 * 120.0
        expected = r2 + 0.5 * (120.0 - r2)

        bright = res.image.data > 128
        assert bright.any()
        peak_radius = float(r[bright].mean())
        assert abs(peak_radius - expected) < 1.0

    def test_smooth_round_trip_error_within_one_percent(self):
        # radial gradient is smooth everywhere, so lam1 -> lam2 -> lam1 under
        # bilinear must come back within 1% of the dynamic range on the annulus
        g = IrisGeometry(128.0, 128.0, 36.0, 120.0)
        r = radius_grid(256, 256, g)
        grad = np.clip((r - 36.0) / (120.0 - 36.0), 0.0, 1.0) * 255.0
        img = PixelGrid(grad.astype(np.uint8))

        out = remap_dilation(img, g, 0.7, BILINEAR)
        back = remap_dilation(out.image, out.geometry, dilation_level(g), BILINEAR)
        annulus = make_label((r >= 37.0) & (r <= 119.0))
        assert mean_abs_diff(back.image, img, annulus) <= 0.01 * 255.0

    def test_rgb_channels_move_together(self, rng):
        g = IrisGeometry(64.0, 64.0, 20.0, 50.0)
        plane = rng.integers(0, 256, (128, 128), dtype=np.uint8)
        rgb = PixelGrid(np.stack([plane, plane, plane], axis=-1))
        res = remap_dilation(rgb, g, 0.6, NEAREST)
        assert np.array_equal(res.image.data[..., 0], res.image.data[..., 1])
        assert np.array_equal(res.image.data[..., 0], res.image.data[..., 2])

    def test_determinism(self, eye_image, eye_geometry):
        a = remap_dilation(eye_image, eye_geometry, 0.42, BILINEAR)
        b = remap_dilation(eye_image, eye_geometry, 0.42, BILINEAR)
        assert a.image == b.image

    def test_lambda_out_of_range(self, eye_image, eye_geometry):
        with pytest.raises(DomainError):
            remap_dilation(eye_image, eye_geometry, 1.2, NEAREST)

    def test_center_outside_image(self, eye_image):
        g = IrisGeometry(500.0, 140.0, 35.0, 100.0)
        with pytest.raises(GeometryError):
            remap_dilation(eye_image, g, 0.5, NEAREST)

    def test_label_with_bilinear_rejected(self):
        g = IrisGeometry(32.0, 32.0, 10.0, 25.0)
        mask = annulus_mask(64, 64, g)
        with pytest.raises(SemanticsError):
            remap_dilation(mask, g, 0.5, BILINEAR)


class TestRemapMask:
    def test_annulus_matches_analytic_target(self):
        g = IrisGeometry(128.0, 128.0, 30.0, 100.0)
        mask = annulus_mask(256, 256, g)
        lam2 = 0.6
        res = remap_mask(mask, g, lam2)

        target = annulus_mask(256, 256, target_geometry(g, lam2))
        assert iou(res.image, target) >= 0.98

        # inner boundary sits at the new pupil radius, within a pixel: take the
        # innermost set pixel along each of 256 angular sectors and average
        # (a single nearest-snap may poke further, the boundary itself may not)
        r = radius_grid(256, 256, g)
        ys, xs = np.nonzero(res.image.data)
        radii = r[ys, xs]
        angles = np.arctan2(ys - g.center_y, xs - g.center_x)
        bins = ((angles + np.pi) / (2 * np.pi) * 256).astype(int) % 256
        inner = np.full(256, np.inf)
        np.minimum.at(inner, bins, radii)
        assert abs(float(inner[np.isfinite(inner)].mean()) - 60.0) <= 1.0

    def test_constant_zero_mask_fixed_point(self):
        g = IrisGeometry(32.0, 32.0, 10.0, 25.0)
        zero = make_label(np.zeros((64, 64)))
        res = remap_mask(zero, g, 0.7)
        assert res.image == zero

    def test_four_class_label_closure(self):
        g = IrisGeometry(96.0, 96.0, 30.0, 75.0)
        mask = eye_parsing_mask(192, 192, g)
        assert label_set(mask) == (0, 1, 2, 3)
        for lam in (0.2, 0.5, 0.74):
            out = remap_mask(mask, g, lam)
            assert set(label_set(out.image)) <= {0, 1, 2, 3}

    def test_mask_round_trip_iou(self):
        g = IrisGeometry(128.0, 128.0, 30.0, 100.0)  # lambda = 0.3
        mask = annulus_mask(256, 256, g)
        fwd = remap_mask(mask, g, 0.6)
        back = remap_mask(fwd.image, fwd.geometry, 0.3)
        assert iou(back.image, mask) >= 0.98

    def test_intensity_grid_rejected(self, eye_image, eye_geometry):
        with pytest.raises(SemanticsError):
            remap_mask(eye_image, eye_geometry, 0.5)


def test_rubber_sheet_invariance_against_remap(eye_image, eye_geometry):
    # cross-module property: any two dilation states of one eye unwrap to the
    # same sheet (up to resampling error at the radial extremes)
    from irisdilate import rubber_sheet

    sheets = {}
    for lam in (0.2, 0.6):
        res = remap_dilation(eye_image, eye_geometry, lam, BILINEAR)
        sheets[lam] = rubber_sheet(res.image, res.geometry, 512, 64, BILINEAR)
    diff = np.abs(
        sheets[0.2].data[1:-1].astype(float) - sheets[0.6].data[1:-1].astype(float)
    )
    assert diff.mean() <= 0.02 * 255.0
