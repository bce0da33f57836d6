"""Raster model: HSV conversion, hue histograms, canonical resize."""

import colorsys

import numpy as np
import pytest

from alg.raster import (
    CANONICAL_HEIGHT,
    CANONICAL_WIDTH,
    HueHistogram,
    RasterImage,
    hsv_to_rgb,
    hue_histogram,
    luminance,
    resize_canonical,
    rgb_to_hsv,
)
from conftest import random_image, solid_image


def test_raster_validation():
    with pytest.raises(ValueError):
        RasterImage(np.zeros((4, 4), dtype=np.uint8))
    with pytest.raises(ValueError):
        RasterImage(np.zeros((4, 4, 3), dtype=np.float64))
    with pytest.raises(ValueError):
        RasterImage(np.zeros((0, 4, 3), dtype=np.uint8))


def test_rgb_to_hsv_matches_colorsys():
    rng = np.random.default_rng(101)
    img = random_image(rng, 16, 16)
    hsv = rgb_to_hsv(img)
    for r in range(16):
        for c in range(16):
            red, green, blue = (img.pixels[r, c] / 255.0).tolist()
            h, s, v = colorsys.rgb_to_hsv(red, green, blue)
            got_h, got_s, got_v = hsv[r, c]
            dh = abs(got_h - h * 360.0) % 360.0
            assert min(dh, 360.0 - dh) < 1e-9
            assert got_s == pytest.approx(s, abs=1e-12)
            assert got_v == pytest.approx(v, abs=1e-12)


def test_rgb_to_hsv_orange():
    hsv = rgb_to_hsv(solid_image((255, 128, 0), 1, 1))
    assert hsv[0, 0, 0] == pytest.approx(30.1176470588, abs=1e-6)
    assert hsv[0, 0, 1] == pytest.approx(1.0)
    assert hsv[0, 0, 2] == pytest.approx(1.0)


def test_gray_pixels_have_zero_hue_and_saturation():
    hsv = rgb_to_hsv(solid_image((77, 77, 77), 2, 2))
    assert np.all(hsv[..., 0] == 0.0)
    assert np.all(hsv[..., 1] == 0.0)


def test_hsv_round_trip_within_one():
    rng = np.random.default_rng(102)
    img = random_image(rng, 24, 24)
    back = hsv_to_rgb(rgb_to_hsv(img))
    assert np.max(np.abs(back.pixels.astype(int) - img.pixels.astype(int))) <= 1


def test_hue_histogram_mass_and_filtering():
    px = np.zeros((3, 1, 3), dtype=np.uint8)
    px[0, 0] = (255, 0, 0)      # hue 0, sat 1
    px[1, 0] = (255, 0, 0)
    px[2, 0] = (0, 255, 0)      # hue 120, sat 1
    hist = hue_histogram(rgb_to_hsv(RasterImage(px)))
    assert hist.bins[0] == pytest.approx(2.0)
    assert hist.bins[120] == pytest.approx(1.0)
    assert hist.total_mass == pytest.approx(3.0)

    # near-achromatic and near-black pixels are dropped
    dull = np.zeros((2, 1, 3), dtype=np.uint8)
    dull[0, 0] = (128, 125, 126)    # sat ~ 0.02 < 0.05
    dull[1, 0] = (10, 0, 0)         # val ~ 0.04 < 0.05
    assert hue_histogram(rgb_to_hsv(RasterImage(dull))).total_mass == 0.0


def test_hue_histogram_validation():
    with pytest.raises(ValueError):
        HueHistogram(np.zeros(359))
    with pytest.raises(ValueError):
        hue_histogram(rgb_to_hsv(solid_image((1, 2, 3), 1, 1)), s_min=-0.1)


def test_resize_canonical_identity():
    rng = np.random.default_rng(103)
    img = random_image(rng, CANONICAL_HEIGHT, CANONICAL_WIDTH)
    out = resize_canonical(img)
    assert out.pixels is not img.pixels
    assert np.array_equal(out.pixels, img.pixels)


def _bilinear_oracle(src: np.ndarray, r: float, c: float) -> float:
    h, w = src.shape
    r0, c0 = int(np.floor(r)), int(np.floor(c))
    fr, fc = r - r0, c - c0
    def at(rr, cc):
        return src[min(max(rr, 0), h - 1), min(max(cc, 0), w - 1)]
    return (at(r0, c0) * (1 - fr) * (1 - fc) + at(r0, c0 + 1) * (1 - fr) * fc
            + at(r0 + 1, c0) * fr * (1 - fc) + at(r0 + 1, c0 + 1) * fr * fc)


def test_resize_canonical_matches_scalar_oracle():
    rng = np.random.default_rng(104)
    img = random_image(rng, 31, 47)
    out = resize_canonical(img)
    assert out.width == CANONICAL_WIDTH and out.height == CANONICAL_HEIGHT

    src = img.pixels[..., 1].astype(np.float64)
    for r, c in [(0, 0), (0, 639), (425, 0), (425, 639), (100, 300), (213, 320), (7, 583)]:
        sr = (r + 0.5) * (31 / CANONICAL_HEIGHT) - 0.5
        sc = (c + 0.5) * (47 / CANONICAL_WIDTH) - 0.5
        want = _bilinear_oracle(src, sr, sc)
        assert abs(float(out.pixels[r, c, 1]) - want) <= 1.0


def test_luminance_rec601():
    img = solid_image((255, 0, 0), 1, 1)
    assert luminance(img)[0, 0] == pytest.approx(0.299 * 255)
    img = solid_image((10, 20, 30), 1, 1)
    assert luminance(img)[0, 0] == pytest.approx(0.299 * 10 + 0.587 * 20 + 0.114 * 30)
