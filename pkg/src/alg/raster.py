"""Pixel model shared by all analyzers: 8-bit RGB rasters, HSV conversion,
hue histograms and the canonical 640x426 working size."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CANONICAL_WIDTH = 640
CANONICAL_HEIGHT = 426

# Rec.601 luma weights; every luminance consumer in the package uses these.
_LUMA = np.array([0.299, 0.587, 0.114])

HUE_BINS = 360


@dataclass(frozen=True)
class RasterImage:
    """Row-major (height, width, 3) uint8 RGB raster."""

    pixels: np.ndarray

    def __post_init__(self):
        px = self.pixels
        if not isinstance(px, np.ndarray) or px.ndim != 3 or px.shape[2] != 3:
            raise ValueError("pixels must be a (height, width, 3) array")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if px.dtype != np.uint8:
            raise ValueError(f"pixels must be uint8, got {px.dtype}")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def is_canonical(self) -> bool:
        return self.width == CANONICAL_WIDTH and self.height == CANONICAL_HEIGHT


@dataclass(frozen=True)
class HueHistogram:
    """360 one-degree hue bins; bin b covers [b, b+1) degrees and carries the
    saturation mass of the pixels that fell into it."""

    bins: np.ndarray

    def __post_init__(self):
        if self.bins.shape != (HUE_BINS,):
            raise ValueError("hue histogram needs exactly 360 bins")
        if np.any(self.bins < 0):
            raise ValueError("hue histogram weights must be non-negative")

    @property
    def total_mass(self) -> float:
        return float(self.bins.sum())


def rgb_to_hsv(image: RasterImage) -> np.ndarray:
    """Convert to a float (h, w, 3) grid of [hue deg, sat, val].

    Standard hexcone model: hue in [0, 360), sat and val in [0, 1].
    Achromatic pixels (sat == 0) store hue 0.
    """
    rgb = image.pixels.astype(np.float64) / 255.0
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    cmax = rgb.max(axis=-1)
    delta = cmax - rgb.min(axis=-1)

    hue = np.zeros_like(cmax)
    chrom = delta > 0
    rm = chrom & (cmax == r)
    gm = chrom & (cmax == g) & ~rm
    bm = chrom & ~rm & ~gm
    safe = np.where(chrom, delta, 1.0)
    hue[rm] = 60.0 * (((g - b)[rm] / safe[rm]) % 6.0)
    hue[gm] = 60.0 * ((b - r)[gm] / safe[gm] + 2.0)
    hue[bm] = 60.0 * ((r - g)[bm] / safe[bm] + 4.0)
    hue %= 360.0

    sat = np.where(cmax > 0, delta / np.where(cmax > 0, cmax, 1.0), 0.0)
    return np.stack([hue, sat, cmax], axis=-1)


def hsv_to_rgb(hsv: np.ndarray) -> RasterImage:
    """Inverse hexcone conversion back to an 8-bit raster."""
    h = hsv[..., 0] % 360.0
    s = np.clip(hsv[..., 1], 0.0, 1.0)
    v = np.clip(hsv[..., 2], 0.0, 1.0)

    c = v * s
    hp = h / 60.0
    x = c * (1.0 - np.abs(hp % 2.0 - 1.0))
    m = v - c
    sector = np.floor(hp).astype(int) % 6

    zeros = np.zeros_like(c)
    r = np.select([sector == i for i in range(6)], [c, x, zeros, zeros, x, c])
    g = np.select([sector == i for i in range(6)], [x, c, c, x, zeros, zeros])
    b = np.select([sector == i for i in range(6)], [zeros, zeros, x, c, c, x])

    rgb = np.stack([r + m, g + m, b + m], axis=-1)
    return RasterImage(np.clip(np.rint(rgb * 255.0), 0, 255).astype(np.uint8))


def luminance(image: RasterImage) -> np.ndarray:
    """Rec.601 luminance on the 0..255 scale, float (h, w)."""
    return image.pixels.astype(np.float64) @ _LUMA


def hue_histogram(hsv: np.ndarray, s_min: float = 0.05, v_min: float = 0.05) -> HueHistogram:
    """Accumulate saturation mass into one-degree hue bins.

    A pixel contributes its saturation to bin floor(hue) when both
    sat >= s_min and val >= v_min; near-achromatic pixels are dropped so
    that gray noise cannot distort palette fitting.
    """
    if not (0.0 <= s_min <= 1.0 and 0.0 <= v_min <= 1.0):
        raise ValueError("s_min and v_min must lie in [0, 1]")
    h = hsv[..., 0].ravel()
    s = hsv[..., 1].ravel()
    v = hsv[..., 2].ravel()
    admit = (s >= s_min) & (v >= v_min)
    idx = np.floor(h[admit]).astype(int)
    np.clip(idx, 0, HUE_BINS - 1, out=idx)
    bins = np.bincount(idx, weights=s[admit], minlength=HUE_BINS)
    return HueHistogram(bins)


def resize_canonical(image: RasterImage) -> RasterImage:
    """Bilinear resample to exactly 640x426; identity on canonical input."""
    if image.is_canonical:
        return RasterImage(image.pixels.copy())

    src = image.pixels.astype(np.float64)
    h, w = image.height, image.width

    # Center-aligned sampling with clamp-to-edge.
    xs = (np.arange(CANONICAL_WIDTH) + 0.5) * (w / CANONICAL_WIDTH) - 0.5
    ys = (np.arange(CANONICAL_HEIGHT) + 0.5) * (h / CANONICAL_HEIGHT) - 0.5
    x0f = np.floor(xs)
    y0f = np.floor(ys)
    fx = xs - x0f
    fy = ys - y0f
    x0 = np.clip(x0f.astype(int), 0, w - 1)
    x1 = np.clip(x0f.astype(int) + 1, 0, w - 1)
    y0 = np.clip(y0f.astype(int), 0, h - 1)
    y1 = np.clip(y0f.astype(int) + 1, 0, h - 1)

    wx = fx[None, :, None]
    wy = fy[:, None, None]
    out = (
        src[np.ix_(y0, x0)] * (1 - wx) * (1 - wy)
        + src[np.ix_(y0, x1)] * wx * (1 - wy)
        + src[np.ix_(y1, x0)] * (1 - wx) * wy
        + src[np.ix_(y1, x1)] * wx * wy
    )
    return RasterImage(np.clip(np.rint(out), 0, 255).astype(np.uint8))
